//! Exact verification reports for matrices over `B`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{instanton::specialize_matrix, BPoly, Piece, Piecewise};
use crate::error::{Error, Result};
use crate::qalgebra::HElement;
use crate::rational::Rational;
use crate::ring::{HAlgebra, QAlgebra, Ring, SpecializedAlgebra};
use crate::ringmat::RingMatrix;

pub const SCHEMA_VERSION: &str = "1";

/// Every check a certificate reports, in key order.
pub const CHECK_NAMES: [&str; 5] = [
    "boundary_scalar",
    "continuity",
    "idempotent",
    "left_piece_constant",
    "star_invariant",
];

/// Coefficient field for verification: formal `q` or a fixed rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    Generic,
    At(Rational),
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Generic => write!(f, "generic"),
            QMode::At(q0) => write!(f, "{q0}"),
        }
    }
}

impl FromStr for QMode {
    type Err = Error;

    /// `generic` or an exact nonzero rational `p/r`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "generic" {
            return Ok(QMode::Generic);
        }
        let q0: Rational = s
            .parse()
            .map_err(|_| Error::Invariant(format!("invalid q mode `{s}`")))?;
        if q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(QMode::At(q0))
    }
}

impl Serialize for QMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    /// Nonzero terms left in the residual; `0` exactly when `pass`.
    pub residual_terms: usize,
}

impl CheckResult {
    fn from_residual(residual_terms: usize) -> Self {
        CheckResult {
            pass: residual_terms == 0,
            residual_terms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema_version: String,
    pub n: i64,
    pub q_mode: QMode,
    pub checks: BTreeMap<String, CheckResult>,
    /// Canonical text of each entry, row-major.
    pub entries: Vec<String>,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.get(name)
    }

    /// Pretty JSON with a trailing newline; key order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

/// Verifies a generic-`q` matrix over `B`, specialising first when `mode`
/// fixes `q`. Check failures are reported in the certificate; only budget
/// overflows are errors.
pub fn verify(p: &RingMatrix<BPoly<HElement>>, n: i64, mode: &QMode) -> Result<Certificate> {
    match mode {
        QMode::Generic => verify_in(&Piecewise::new(QAlgebra::default()), p, n, mode),
        QMode::At(q0) => {
            let ring = Piecewise::new(SpecializedAlgebra::new(q0.clone())?);
            let ps = specialize_matrix(p, &ring)?;
            verify_in(&ring, &ps, n, mode)
        }
    }
}

/// [`verify`] over an arbitrary coefficient ring.
pub fn verify_in<R: HAlgebra + Sync>(
    ring: &Piecewise<R>,
    p: &RingMatrix<BPoly<R::Elem>>,
    n: i64,
    mode: &QMode,
) -> Result<Certificate> {
    let size = |m: &RingMatrix<BPoly<R::Elem>>| -> usize {
        m.entries().iter().map(|e| ring.term_count(e)).sum()
    };
    let h = &ring.base;
    let mut checks = BTreeMap::new();

    let square = p.mul(ring, p)?;
    let idem = square.sub(ring, p)?;
    checks.insert("idempotent", CheckResult::from_residual(size(&idem)));

    let star = p.star(ring)?.sub(ring, p)?;
    checks.insert("star_invariant", CheckResult::from_residual(size(&star)));

    let half = Rational::new(1, 2);
    let mut jump = 0;
    let mut non_scalar = 0;
    for e in p.entries() {
        let l = ring.eval_piece(e, Piece::Left, &half);
        let r = ring.eval_piece(e, Piece::Right, &half);
        jump += h.term_count(&h.sub(&l, &r));
        for v in [
            ring.eval_piece(e, Piece::Left, &Rational::ZERO),
            ring.eval_piece(e, Piece::Right, &Rational::ONE),
        ] {
            if !h.is_scalar(&v) {
                non_scalar += h.term_count(&v);
            }
        }
    }
    checks.insert("continuity", CheckResult::from_residual(jump));
    checks.insert("boundary_scalar", CheckResult::from_residual(non_scalar));

    let k = p.dim() / 2;
    let leg = RingMatrix::diag_projection(h, p.dim(), k);
    let mut left_residual = 0;
    for (e, c) in p.entries().iter().zip(leg.entries()) {
        let diff = ring.sub(e, &ring.constant(c.clone()));
        left_residual += diff.left.iter().map(|x| h.term_count(x)).sum::<usize>();
    }
    checks.insert(
        "left_piece_constant",
        CheckResult::from_residual(left_residual),
    );

    Ok(Certificate {
        schema_version: SCHEMA_VERSION.to_string(),
        n,
        q_mode: mode.clone(),
        checks: checks
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        entries: p.entries().iter().map(|e| ring.render(e)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bspace::instanton_idempotent;

    #[test]
    fn constant_projection_passes_everything() {
        let b = Piecewise::new(QAlgebra::default());
        let p = RingMatrix::diag_projection(&b, 4, 2);
        let cert = verify(&p, 0, &QMode::Generic).unwrap();
        for name in CHECK_NAMES {
            assert!(cert.check(name).unwrap().pass, "{name}");
        }
        assert_eq!(cert.entries[0], "[0,1/2]: (1) ; [1/2,1]: (1)");
        assert_eq!(cert.entries[1], "[0,1/2]: 0 ; [1/2,1]: 0");
    }

    #[test]
    fn charge_one_is_idempotent_but_not_selfadjoint() {
        let b = Piecewise::new(QAlgebra::default());
        let p = instanton_idempotent(&b, 1).unwrap();
        let cert = verify(&p, 1, &QMode::Generic).unwrap();
        assert!(cert.check("idempotent").unwrap().pass);
        assert!(cert.check("boundary_scalar").unwrap().pass);
        assert!(cert.check("left_piece_constant").unwrap().pass);
        assert!(cert.check("continuity").unwrap().pass);
        let star = cert.check("star_invariant").unwrap();
        assert!(!star.pass && star.residual_terms > 0);

        // the failure is witnessed by an explicit nonzero entry of p* - p on
        // the right piece
        let diff = p.star(&b).unwrap().sub(&b, &p).unwrap();
        assert!(diff.entries().iter().any(|e| !e.right.is_empty()));
        assert!(diff.entries().iter().all(|e| e.left.is_empty()));
    }

    #[test]
    fn rational_mode_matches_generic() {
        let b = Piecewise::new(QAlgebra::default());
        let p = instanton_idempotent(&b, -1).unwrap();
        let mode: QMode = "1/3".parse().unwrap();
        let cert = verify(&p, -1, &mode).unwrap();
        assert!(cert.check("idempotent").unwrap().pass);
        assert_eq!(cert.q_mode.to_string(), "1/3");
        assert!(matches!("0".parse::<QMode>(), Err(Error::ZeroQ)));
    }

    #[test]
    fn json_layout() {
        let b = Piecewise::new(QAlgebra::default());
        let p = RingMatrix::diag_projection(&b, 4, 2);
        let json = verify(&p, 0, &QMode::Generic).unwrap().to_json();
        let keys = ["schema_version", "\"n\"", "q_mode", "checks", "entries"];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"q_mode\": \"generic\""));
    }
}
