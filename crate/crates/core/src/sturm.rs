//! Real-root counting with Sturm sequences, exact over Q.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::QPoly;

/// `p, p', -rem(p, p'), ...` down to a constant.
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone()];
    if p.deg() == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(-&r);
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations_at(seq: &[QPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| sign(&p.eval(x))))
}

fn variations_at_infinity(seq: &[QPoly], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign(&p.leading());
        if !positive && p.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &QPoly) -> usize {
    if p.is_zero() {
        panic!("zero polynomial has infinitely many roots");
    }
    let seq = sturm_sequence(&p.squarefree_part());
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Number of distinct real roots in the open interval `(a, ∞)`.
pub fn count_roots_above(p: &QPoly, a: &BigRational) -> usize {
    let mut sf = p.squarefree_part();
    let lin = QPoly::new(vec![-a.clone(), BigRational::from_integer(1.into())]);
    if sf.eval(a).is_zero() {
        sf = sf.exact_div(&lin).expect("a is a root");
    }
    let seq = sturm_sequence(&sf);
    variations_at(&seq, a) - variations_at_infinity(&seq, true)
}
