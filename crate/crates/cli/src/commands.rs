//! Command implementations, independent of argument parsing.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use qinstanton_core::bspace::{
    instanton_idempotent, specialize_matrix, verify, DEFAULT_CHARGE_LIMIT, SCHEMA_VERSION,
};
use qinstanton_core::fredholm::{pairing_u_power, pairing_v, winding_degree};
use qinstanton_core::qalgebra::{property_suite, DEFAULT_TERM_BUDGET};
use qinstanton_core::{
    Certificate, Error as CoreError, Piecewise, QAlgebra, QMode, SpecializedAlgebra,
};

use crate::expr::{self, EvalError, ParseError};
use crate::output::{to_json, to_value};

/// Certificate checks that decide the exit status of `pn --check`.
/// `star_invariant` is reported but not required: the patched idempotent is
/// not self-adjoint on the right piece.
pub const REQUIRED_CHECKS: [&str; 4] = [
    "boundary_scalar",
    "continuity",
    "idempotent",
    "left_piece_constant",
];

pub const DEFAULT_Q0: f64 = 0.5;
pub const DEFAULT_K: u32 = 1;
pub const DEFAULT_M: usize = 60;
pub const DEFAULT_TOL: f64 = 1e-6;

pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Eval(EvalError),
    Usage(String),
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let budget = |e: &CoreError| {
            matches!(
                e,
                CoreError::BudgetExceeded { .. }
                    | CoreError::InstantonBudget { .. }
                    | CoreError::DegreeExceeded { .. }
            )
        };
        match self {
            CliError::Core(e) | CliError::Eval(EvalError::Core(e)) if budget(e) => exit::BUDGET,
            _ => exit::USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Eval(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Emitted text and whether every requested check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub passed: bool,
}

/// Subject of a pairing: `Uⁿ` or the shift `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingSubject {
    UPower(i64),
    V,
}

impl std::str::FromStr for PairingSubject {
    type Err = CliError;

    /// `U`, `U^n` with `n` possibly negative, or `V`.
    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Usage(format!("expected U, U^n or V, got `{s}`"));
        match s {
            "U" => Ok(PairingSubject::UPower(1)),
            "V" => Ok(PairingSubject::V),
            _ => s
                .strip_prefix("U^")
                .and_then(|n| n.parse().ok())
                .map(PairingSubject::UPower)
                .ok_or_else(bad),
        }
    }
}

impl fmt::Display for PairingSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingSubject::UPower(1) => write!(f, "U"),
            PairingSubject::UPower(n) => write!(f, "U^{n}"),
            PairingSubject::V => write!(f, "V"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Nf {
        expr: String,
        unicode: bool,
    },
    Pn {
        n: i64,
        q: QMode,
        check: bool,
        max_n: u32,
        unicode: bool,
    },
    Pairing {
        u: PairingSubject,
        k: u32,
        q0: f64,
        tol: f64,
        m: Option<usize>,
        max_n: u32,
    },
    Winding {
        n: i64,
        resolution: usize,
        max_n: u32,
    },
    HopfCheck {
        seed: u64,
        cases: usize,
    },
}

/// Smallest `M ≥ 60` with `q0^{2M} ≤ tol/100`.
pub fn cutoff_for(q0: f64, tol: f64) -> usize {
    let needed = ((tol / 100.0).ln() / (2.0 * q0.ln())).ceil();
    (needed.max(0.0) as usize).max(DEFAULT_M)
}

fn check_charge(n: i64, max_n: u32) -> CliResult<()> {
    if n.unsigned_abs() > u64::from(max_n) {
        return Err(CliError::Core(CoreError::DegreeExceeded {
            degree: u32::try_from(n.unsigned_abs()).unwrap_or(u32::MAX),
            limit: max_n,
        }));
    }
    Ok(())
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::Pn { .. } => "pn",
            Command::Pairing { .. } => "pairing",
            Command::Winding { .. } => "winding",
            Command::HopfCheck { .. } => "hopf-check",
        }
    }

    /// Parameters that determine the output; `None` for uncached commands.
    pub fn cache_params(&self) -> Option<Value> {
        match self {
            Command::Nf { .. } => None,
            Command::Pn {
                n, q, check, unicode, ..
            } => Some(json!({"n": n, "q_mode": q.to_string(), "check": check, "unicode": unicode})),
            Command::Pairing { u, k, q0, tol, m, .. } => Some(json!({
                "u": u.to_string(),
                "k": k,
                "q0": q0.to_bits(),
                "tol": tol.to_bits(),
                "M": m.unwrap_or_else(|| cutoff_for(*q0, *tol)),
            })),
            Command::Winding { n, resolution, .. } => {
                Some(json!({"n": n, "resolution": resolution}))
            }
            Command::HopfCheck { seed, cases } => Some(json!({"seed": seed, "cases": cases})),
        }
    }

    pub fn run(&self) -> CliResult<Output> {
        match self {
            Command::Nf { expr, unicode } => nf(expr, *unicode),
            Command::Pn {
                n,
                q,
                check,
                max_n,
                unicode,
            } => pn(*n, q, *check, *max_n, *unicode),
            Command::Pairing {
                u,
                k,
                q0,
                tol,
                m,
                max_n,
            } => pairing(*u, *k, *q0, *tol, *m, *max_n),
            Command::Winding {
                n,
                resolution,
                max_n,
            } => {
                check_charge(*n, *max_n)?;
                let report = winding_degree(*n, *resolution)?;
                Ok(Output {
                    body: to_json(&to_value(&report)),
                    passed: true,
                })
            }
            Command::HopfCheck { seed, cases } => {
                let report = property_suite(*seed, *cases)?;
                let mut v = to_value(&report);
                v["pass"] = json!(report.passed());
                Ok(Output {
                    body: to_json(&v),
                    passed: report.passed(),
                })
            }
        }
    }
}

pub fn nf(src: &str, unicode: bool) -> CliResult<Output> {
    let e = expr::parse(src).map_err(CliError::Parse)?;
    let x = expr::evaluate(&e, DEFAULT_TERM_BUDGET).map_err(CliError::Eval)?;
    let text = x.to_string();
    let text = if unicode { expr::to_unicode(&text) } else { text };
    Ok(Output {
        body: format!("{text}\n"),
        passed: true,
    })
}

fn render_entries(
    p: &qinstanton_core::RingMatrix<qinstanton_core::BPoly<qinstanton_core::HElement>>,
    q: &QMode,
) -> CliResult<Vec<String>> {
    Ok(match q {
        QMode::Generic => {
            let ring = Piecewise::new(QAlgebra::default());
            p.entries().iter().map(|e| ring.render(e)).collect()
        }
        QMode::At(q0) => {
            let ring = Piecewise::new(SpecializedAlgebra::new(q0.clone())?);
            let ps = specialize_matrix(p, &ring)?;
            ps.entries().iter().map(|e| ring.render(e)).collect()
        }
    })
}

pub fn pn(n: i64, q: &QMode, check: bool, max_n: u32, unicode: bool) -> CliResult<Output> {
    check_charge(n, max_n)?;
    let ring = Piecewise::new(QAlgebra::default());
    let p = instanton_idempotent(&ring, n)?;
    let mut cert = if check {
        verify(&p, n, q)?
    } else {
        Certificate {
            schema_version: SCHEMA_VERSION.to_string(),
            n,
            q_mode: q.clone(),
            checks: BTreeMap::new(),
            entries: render_entries(&p, q)?,
        }
    };
    if unicode {
        cert.entries = cert.entries.iter().map(|e| expr::to_unicode(e)).collect();
    }
    let passed = REQUIRED_CHECKS
        .iter()
        .all(|c| !check || cert.check(c).is_some_and(|r| r.pass));
    Ok(Output {
        body: to_json(&to_value(&cert)),
        passed,
    })
}

pub fn pairing(
    u: PairingSubject,
    k: u32,
    q0: f64,
    tol: f64,
    m: Option<usize>,
    max_n: u32,
) -> CliResult<Output> {
    if !(q0 > 0.0 && q0 < 1.0) {
        return Err(CliError::Usage(format!("--q0 must lie in (0, 1), got {q0}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let m_cutoff = m.unwrap_or_else(|| cutoff_for(q0, tol));
    let report = match u {
        PairingSubject::UPower(n) => {
            check_charge(n, max_n)?;
            pairing_u_power(n, k, q0, m_cutoff)?
        }
        PairingSubject::V => pairing_v(k, q0, m_cutoff)?,
    };
    let passed = (report.value - report.nearest_integer as f64).abs() <= tol;
    let mut v = to_value(&report);
    v["tol"] = to_value(&tol);
    v["pass"] = json!(passed);
    Ok(Output {
        body: to_json(&v),
        passed,
    })
}

/// Default `--max-n`.
pub const DEFAULT_MAX_N: u32 = DEFAULT_CHARGE_LIMIT;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subjects_round_trip() {
        for s in ["U", "U^2", "U^-3", "V"] {
            assert_eq!(s.parse::<PairingSubject>().unwrap().to_string(), s);
        }
        assert_eq!("U^1".parse::<PairingSubject>().unwrap().to_string(), "U");
        assert!("W".parse::<PairingSubject>().is_err());
        assert!("U^x".parse::<PairingSubject>().is_err());
    }

    #[test]
    fn cutoff_grows_with_tolerance() {
        assert_eq!(cutoff_for(0.5, 1e-6), 60);
        assert!(cutoff_for(0.9, 1e-6) > 60);
        let m = cutoff_for(0.9, 1e-8);
        assert!(0.9f64.powi(2 * m as i32) <= 1e-10);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(pn(9, &QMode::Generic, false, 8, false).unwrap_err().exit_code(), exit::BUDGET);
        assert_eq!(nf("(", false).unwrap_err().exit_code(), exit::USAGE);
        let e = pairing(PairingSubject::V, 1, 1.5, 1e-6, None, 8).unwrap_err();
        assert_eq!(e.exit_code(), exit::USAGE);
    }

    #[test]
    fn pn_zero_is_the_constant_projection() {
        let out = pn(0, &QMode::Generic, true, 8, false).unwrap();
        assert!(out.passed);
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["checks"]["star_invariant"]["pass"], json!(true));
        let entries: Vec<&str> = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_str().unwrap())
            .collect();
        let one = "[0,1/2]: (1) ; [1/2,1]: (1)";
        let zero = "[0,1/2]: 0 ; [1/2,1]: 0";
        assert_eq!(entries[0], one);
        assert_eq!(entries[1], zero);
        assert_eq!(entries[5], one);
        assert_eq!(entries[10], zero);
    }
}
