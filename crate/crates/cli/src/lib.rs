//! Command implementations behind the `matropoly` binary. Every command
//! returns a [`Report`]: line-oriented output plus an exit status, so the
//! binary only prints and exits.

pub mod error;
pub mod parse;
pub mod verify;

use clap::ValueEnum;
use matropoly_core::catalog::catalog;
use matropoly_core::decomposition::{
    decompose_base_polytope, decompose_independent_polytope, decompose_truncation_flag,
    SignedDecomposition,
};
use matropoly_core::invariants::{beta, gamma, signed_beta, signed_gamma, tutte};
use matropoly_core::volume::{
    factorial, volume_base_polytope, volume_independent_polytope, volume_truncation_flag,
};
use matropoly_core::{Matroid, VolumeError};
use num_rational::BigRational;
use sha2::{Digest, Sha256};

pub use error::CliError;
pub use parse::{parse_matroid_file, serialize, MatroidFile};
use verify::{verify_all, Oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Polytope {
    Base,
    Indep,
    Flag,
}

impl Polytope {
    pub fn name(self) -> &'static str {
        match self {
            Polytope::Base => "base",
            Polytope::Indep => "indep",
            Polytope::Flag => "flag",
        }
    }
}

pub fn decompose(m: &Matroid, polytope: Polytope) -> SignedDecomposition {
    match polytope {
        Polytope::Base => decompose_base_polytope(m),
        Polytope::Indep => decompose_independent_polytope(m),
        Polytope::Flag => decompose_truncation_flag(m),
    }
}

pub fn formula_volume(m: &Matroid, polytope: Polytope, threads: usize) -> Result<BigRational, VolumeError> {
    match polytope {
        Polytope::Base => Ok(volume_base_polytope(m, threads)),
        Polytope::Indep => Ok(volume_independent_polytope(m, threads)),
        Polytope::Flag => volume_truncation_flag(m, threads),
    }
}

/// `p/q`, always with an explicit denominator.
pub fn format_fraction(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: String, input: Option<&str>) -> Report {
        let digest = match input {
            Some(text) => format!("sha256:{:x}", Sha256::digest(text.as_bytes())),
            None => "none".to_string(),
        };
        Report {
            lines: vec![format!("command: {command}"), format!("input: {digest}")],
            exit_code: 0,
        }
    }

    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

pub fn cmd_decompose(text: &str, polytope: Polytope) -> Result<Report, CliError> {
    let m = parse_matroid_file(text)?;
    let d = decompose(&m, polytope);
    let mut r = Report::new(format!("decompose --polytope {}", polytope.name()), Some(text));
    r.push(format!("family: {}", d.family().name()));
    for (s, y) in d.terms() {
        r.push(format!("y[{s}] = {y}"));
    }
    Ok(r)
}

pub fn cmd_volume(text: &str, polytope: Polytope, threads: usize, degree: bool) -> Result<Report, CliError> {
    if degree && polytope != Polytope::Base {
        return Err(CliError::Usage("--degree applies to --polytope base only".into()));
    }
    let m = parse_matroid_file(text)?;
    let volume = formula_volume(&m, polytope, threads)?;
    let mut command = format!("volume --polytope {}", polytope.name());
    if degree {
        command.push_str(" --degree");
    }
    let mut r = Report::new(command, Some(text));
    r.push(format!("volume = {}", format_fraction(&volume)));
    if degree {
        if !m.is_connected() {
            return Err(VolumeError::DisconnectedMatroid.into());
        }
        let scaled = &volume * BigRational::from_integer(factorial(m.n() - 1));
        if !scaled.is_integer() {
            return Err(VolumeError::NonIntegerNormalizedVolume { volume: scaled.to_string() }.into());
        }
        r.push(format!("normalized_volume = {}", scaled.to_integer()));
    }
    Ok(r)
}

pub fn cmd_invariants(text: &str) -> Result<Report, CliError> {
    let m = parse_matroid_file(text)?;
    let mut r = Report::new("invariants".into(), Some(text));
    r.push(format!("n = {}", m.n()));
    r.push(format!("rank = {}", m.rank()));
    r.push(format!("connected = {}", m.is_connected()));
    for (i, j, c) in tutte(&m).terms() {
        r.push(format!("tutte[{i},{j}] = {c}"));
    }
    r.push(format!("beta = {}", beta(&m)));
    r.push(format!("signed_beta = {}", signed_beta(&m)));
    r.push(format!("gamma = {}", gamma(&m)));
    r.push(format!("signed_gamma = {}", signed_gamma(&m)));
    let flats: Vec<String> = m.coconnected_flats().iter().map(|a| a.to_string()).collect();
    r.push(format!("coconnected_flats = {}", flats.join(" ")));
    Ok(r)
}

/// Verifies one file, or the catalog up to `max_n` when `text` is `None`.
/// A mismatch yields exit status 1 and the counterexample in the report.
pub fn cmd_verify(text: Option<&str>, max_n: usize, threads: usize, oracle: &dyn Oracle) -> Result<Report, CliError> {
    let (mut r, result) = match text {
        Some(text) => {
            let m = parse_matroid_file(text)?;
            let r = Report::new("verify".into(), Some(text));
            (r, verify_all([("input", &m)], oracle, threads))
        }
        None => {
            let entries = catalog(max_n);
            let r = Report::new(format!("verify --catalog --max-n {max_n}"), None);
            let result = verify_all(entries.iter().map(|e| (e.name.as_str(), &e.matroid)), oracle, threads);
            (r, result)
        }
    };
    match result {
        Ok(checks) => r.push(format!("OK ({checks} checks)")),
        Err(cx) => {
            r.push("FAILED");
            for line in cx.to_string().lines() {
                r.push(line);
            }
            r.exit_code = 1;
        }
    }
    Ok(r)
}
