#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from the crate directory so fixture paths are relative.
pub fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

pub fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zetaforge"));
    cmd.current_dir(manifest_dir()).args(args).env_remove("ZETAFORGE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Whether `--threads` applies.
    pub counts: bool,
}

pub const GOLDEN: &[Golden] = &[
    Golden { name: "count_p1_f2", args: &["count", "tests/data/p1_f2.json", "--ext-max", "4"], exit: 0, counts: true },
    Golden { name: "count_elliptic_f5", args: &["count", "tests/data/elliptic_f5.json", "--ext-max", "2"], exit: 0, counts: true },
    Golden { name: "count_elliptic_f5_enum", args: &["count", "tests/data/elliptic_f5_enum.json", "--ext-max", "3"], exit: 0, counts: true },
    Golden { name: "count_fermat_cubic_f7", args: &["count", "tests/data/fermat_cubic_f7.json", "--ext-max", "3"], exit: 0, counts: true },
    Golden { name: "zeta_elliptic_f5", args: &["zeta", "tests/data/elliptic_f5.json"], exit: 0, counts: true },
    Golden { name: "zeta_p2_f3", args: &["zeta", "tests/data/p2_f3.json", "--num-deg", "0", "--den-deg", "3"], exit: 0, counts: true },
    Golden { name: "zeta_genus2_f7", args: &["zeta", "tests/data/genus2_f7.json"], exit: 0, counts: true },
    Golden { name: "verify_elliptic_f5", args: &["verify", "tests/data/elliptic_f5.json", "--ext-max", "3"], exit: 0, counts: true },
    Golden { name: "verify_elliptic_zeta", args: &["verify", "tests/data/elliptic_zeta.json"], exit: 0, counts: false },
    Golden { name: "verify_tampered_zeta", args: &["verify", "tests/data/tampered_zeta.json"], exit: 5, counts: false },
    Golden { name: "verify_p2_f3", args: &["verify", "tests/data/p2_f3.json", "--num-deg", "0", "--den-deg", "3"], exit: 0, counts: true },
    Golden { name: "verify_genus2_f7", args: &["verify", "tests/data/genus2_f7.json", "--ext-max", "4"], exit: 0, counts: true },
    Golden {
        name: "verify_fermat_cubic_f7",
        args: &["verify", "tests/data/fermat_cubic_f7.json", "--num-deg", "2", "--den-deg", "2", "--expected-betti", "1,2,1"],
        exit: 0,
        counts: true,
    },
    Golden { name: "lseries_congruent", args: &["lseries", "--a", "-1", "--b", "0", "--pmax", "20", "--nmax", "30"], exit: 0, counts: false },
    Golden { name: "lseries_euler", args: &["lseries", "--a", "1", "--b", "-1", "--pmax", "50", "--nmax", "50", "--s", "2"], exit: 0, counts: false },
];

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.json"))
}

impl Golden {
    pub fn invoke(&self, threads: Option<usize>) -> Output {
        let t = threads.map(|t| t.to_string());
        let mut args: Vec<&str> = self.args.to_vec();
        if let Some(t) = &t {
            args.extend(["--threads", t.as_str()]);
        }
        run(&args)
    }

    /// Problems found comparing runs against each other and the stored file.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let first = self.invoke(None);
        if first.status.code() != Some(self.exit) {
            problems.push(format!(
                "{}: exit {:?}, expected {}; stderr: {}",
                self.name,
                first.status.code(),
                self.exit,
                String::from_utf8_lossy(&first.stderr)
            ));
        }
        let mut variants = vec![("second run", self.invoke(None))];
        if self.counts {
            for t in [1, 2, 4] {
                variants.push(("threads", self.invoke(Some(t))));
            }
        }
        for (what, out) in &variants {
            if out.stdout != first.stdout {
                problems.push(format!("{}: {what} differs", self.name));
            }
        }
        let path = golden_path(self.name);
        if std::env::var("ZETAFORGE_UPDATE_GOLDEN").is_ok_and(|v| !v.is_empty()) {
            std::fs::write(&path, &first.stdout).expect("golden file written");
        }
        match std::fs::read(&path) {
            Ok(stored) if stored == first.stdout => {}
            Ok(_) => problems.push(format!("{}: differs from {}", self.name, display(&path))),
            Err(e) => problems.push(format!("{}: {}: {e}", self.name, display(&path))),
        }
        problems
    }
}

fn display(p: &Path) -> String {
    p.strip_prefix(manifest_dir()).unwrap_or(p).display().to_string()
}
