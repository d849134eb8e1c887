//! Compiled equation systems and the enumeration loop.

use std::collections::BTreeMap;
use std::thread;

use super::{CountError, CountMethod, Polynomial};
use crate::arith;
use crate::field::{ElemIdx, FieldDesc};

const ZERO_LOG: u64 = u64::MAX;

/// `coeff * Π x_v^e` with every `e > 0` and `coeff != 0`.
#[derive(Debug, Clone)]
struct CTerm {
    coeff: ElemIdx,
    coeff_log: u64,
    vars: Vec<(usize, u64)>,
}

/// Equations with coefficients already mapped into one field.
#[derive(Debug, Clone)]
pub(crate) struct System {
    nvars: usize,
    eqs: Vec<Vec<CTerm>>,
}

fn collect_terms(
    field: &FieldDesc,
    raw: impl Iterator<Item = (ElemIdx, Vec<(usize, u64)>)>,
) -> Vec<CTerm> {
    // merge equal monomials so the fibre detection sees them as one term
    let mut merged: BTreeMap<Vec<(usize, u64)>, ElemIdx> = BTreeMap::new();
    for (c, vars) in raw {
        let slot = merged.entry(vars).or_insert(0);
        *slot = field.add_idx(*slot, c);
    }
    merged
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(vars, coeff)| CTerm {
            coeff,
            coeff_log: field.log_idx(coeff).expect("nonzero"),
            vars,
        })
        .collect()
}

impl System {
    pub(crate) fn compile(eqs: &[Polynomial], nvars: usize, field: &FieldDesc) -> System {
        let eqs = eqs
            .iter()
            .map(|eq| {
                collect_terms(
                    field,
                    eq.terms.iter().map(|t| {
                        let vars = t
                            .exponents
                            .iter()
                            .enumerate()
                            .filter(|&(_, &e)| e > 0)
                            .map(|(v, &e)| (v, e as u64))
                            .collect();
                        (field.int_idx(t.coeff), vars)
                    }),
                )
            })
            .collect();
        System { nvars, eqs }
    }

    /// Fixes the leading `fixed.len()` variables and renumbers the rest from 0.
    pub(crate) fn substitute_prefix(&self, fixed: &[ElemIdx], field: &FieldDesc) -> System {
        let k = fixed.len();
        let eqs = self
            .eqs
            .iter()
            .map(|eq| {
                collect_terms(
                    field,
                    eq.iter().filter_map(|t| {
                        let mut c = t.coeff;
                        let mut vars = Vec::new();
                        for &(v, e) in &t.vars {
                            if v < k {
                                let val = field.pow_idx(fixed[v], e as i64).expect("e > 0");
                                c = field.mul_idx(c, val);
                            } else {
                                vars.push((v - k, e));
                            }
                        }
                        (c != 0).then_some((c, vars))
                    }),
                )
            })
            .collect();
        System {
            nvars: self.nvars - k,
            eqs,
        }
    }
}

/// Solve-for-one-variable data: the equation reads `rest + coeff y^exp = 0`.
#[derive(Debug, Clone)]
struct Fiber {
    var: usize,
    coeff: ElemIdx,
    exp: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct Plan {
    system: System,
    /// Variables in no equation; each multiplies the count by q.
    free_vars: usize,
    fiber: Option<Fiber>,
}

pub(crate) fn plan(system: System, _field: &FieldDesc, method: CountMethod) -> Plan {
    match method {
        CountMethod::Exhaustive => Plan {
            system,
            free_vars: 0,
            fiber: None,
        },
        CountMethod::Reduced => reduce(system),
    }
}

fn reduce(system: System) -> Plan {
    let mut eqs: Vec<Vec<CTerm>> = system.eqs.into_iter().filter(|e| !e.is_empty()).collect();
    let mut used = vec![false; system.nvars];
    for t in eqs.iter().flatten() {
        for &(v, _) in &t.vars {
            used[v] = true;
        }
    }
    let mut renumber = vec![usize::MAX; system.nvars];
    let mut active = 0;
    for v in 0..system.nvars {
        if used[v] {
            renumber[v] = active;
            active += 1;
        }
    }
    for t in eqs.iter_mut().flatten() {
        for pair in t.vars.iter_mut() {
            pair.0 = renumber[pair.0];
        }
    }

    let mut fiber = None;
    if eqs.len() == 1 {
        for v in (0..active).rev() {
            let containing: Vec<usize> = eqs[0]
                .iter()
                .enumerate()
                .filter(|(_, t)| t.vars.iter().any(|&(w, _)| w == v))
                .map(|(i, _)| i)
                .collect();
            if let [i] = containing[..] {
                if let [(_, e)] = eqs[0][i].vars[..] {
                    let t = eqs[0].remove(i);
                    fiber = Some(Fiber {
                        var: v,
                        coeff: t.coeff,
                        exp: e,
                    });
                    break;
                }
            }
        }
    }
    Plan {
        system: System { nvars: active, eqs },
        free_vars: system.nvars - active,
        fiber,
    }
}

pub(crate) fn check_budget(needed: u128, budget: u64) -> Result<(), CountError> {
    if needed > budget as u128 {
        Err(CountError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

impl Plan {
    fn enumerated_vars(&self) -> usize {
        self.system.nvars - usize::from(self.fiber.is_some())
    }

    /// Tuples the enumeration loop will visit.
    pub(crate) fn candidates(&self, q: u64) -> u128 {
        (q as u128)
            .checked_pow(self.enumerated_vars() as u32)
            .unwrap_or(u128::MAX)
    }

    pub(crate) fn count(&self, field: &FieldDesc, partitions: usize) -> u64 {
        let q = field.q();
        let scale = q.pow(self.free_vars as u32);
        let order: Vec<usize> = (0..self.system.nvars)
            .filter(|&v| self.fiber.as_ref().is_none_or(|f| f.var != v))
            .collect();
        if order.is_empty() {
            return scale * self.count_range(field, &order, 0, 1);
        }
        let parts = partitions.clamp(1, q as usize) as u64;
        let bounds: Vec<(u64, u64)> = (0..parts)
            .map(|i| (q * i / parts, q * (i + 1) / parts))
            .collect();
        let total: u64 = if parts == 1 {
            self.count_range(field, &order, 0, q)
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = bounds
                    .iter()
                    .map(|&(lo, hi)| {
                        let order = &order;
                        s.spawn(move || self.count_range(field, order, lo, hi))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).sum()
            })
        };
        scale * total
    }

    /// Enumerates the variables in `order`, the first restricted to `[lo, hi)`.
    fn count_range(&self, field: &FieldDesc, order: &[usize], lo: u64, hi: u64) -> u64 {
        let q = field.q();
        let qm1 = q - 1;
        let n = self.system.nvars;
        let mut logs = vec![ZERO_LOG; n];
        let mut vals = vec![0 as ElemIdx; order.len()];
        let set = |logs: &mut [u64], v: usize, x: ElemIdx| {
            logs[v] = field.log_idx(x).unwrap_or(ZERO_LOG);
        };
        if let Some(&v0) = order.first() {
            vals[0] = lo as ElemIdx;
            set(&mut logs, v0, vals[0]);
        }
        for (i, &v) in order.iter().enumerate().skip(1) {
            set(&mut logs, v, vals[i]);
        }

        let eval_term = |t: &CTerm, logs: &[u64]| -> ElemIdx {
            let mut acc = t.coeff_log;
            for &(v, e) in &t.vars {
                let l = logs[v];
                if l == ZERO_LOG {
                    return 0;
                }
                acc = (acc + (l % qm1) * (e % qm1)) % qm1;
            }
            field.exp_idx(acc)
        };
        let eval_eq = |eq: &[CTerm], logs: &[u64]| -> ElemIdx {
            eq.iter()
                .fold(0, |s, t| field.add_idx(s, eval_term(t, logs)))
        };

        let mut count = 0u64;
        loop {
            match &self.fiber {
                None => {
                    if self.system.eqs.iter().all(|eq| eval_eq(eq, &logs) == 0) {
                        count += 1;
                    }
                }
                Some(fb) => {
                    // coeff y^exp = -rest
                    let rest = eval_eq(&self.system.eqs[0], &logs);
                    let inv = field.inv_idx(fb.coeff).expect("nonzero");
                    let t = field.mul_idx(field.neg_idx(rest), inv);
                    count += match field.log_idx(t) {
                        None => 1,
                        Some(l) => {
                            let d = arith::gcd(fb.exp, qm1);
                            if l % d == 0 {
                                d
                            } else {
                                0
                            }
                        }
                    };
                }
            }
            // odometer, least significant = last in `order`
            if order.is_empty() {
                return count;
            }
            let mut i = order.len() - 1;
            loop {
                vals[i] += 1;
                let limit = if i == 0 { hi } else { q };
                if (vals[i] as u64) < limit {
                    set(&mut logs, order[i], vals[i]);
                    break;
                }
                if i == 0 {
                    return count;
                }
                vals[i] = 0;
                set(&mut logs, order[i], 0);
                i -= 1;
            }
        }
    }
}
