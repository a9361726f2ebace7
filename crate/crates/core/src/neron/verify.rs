use std::collections::BTreeMap;
use std::fmt;

use super::construct::{with_j, SmoothPresentation};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertificateKind {
    /// `d^(e+1) g_i ∈ (f, h) + J`.
    ScaledGInFH,
    /// Each generator of `I` lies in `((h, g) + J)_{s s'}`.
    IInSaturation,
    /// `s ≡ s' ≡ 1 mod (T)`.
    UnitsAtOrigin,
    /// `f_i(Y) ≡ f_i(y') + d^(e+1) T_i + d^(2e) Q_i mod (h) + J`.
    TaylorCongruence,
}

impl CertificateKind {
    pub fn label(self) -> &'static str {
        match self {
            CertificateKind::ScaledGInFH => "d^(e+1) g in (f,h)+J",
            CertificateKind::IInSaturation => "I in ((h,g)+J)_(ss')",
            CertificateKind::UnitsAtOrigin => "s = s' = 1 mod (T)",
            CertificateKind::TaylorCongruence => "f(Y) = f(y')+d^(e+1)T+d^(2e)Q mod (h)+J",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CertificateCheck {
    pub kind: CertificateKind,
    /// Zero-based index of the equation or generator the check concerns.
    pub index: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CertificateCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn kind_passed(&self, kind: CertificateKind) -> bool {
        self.checks.iter().filter(|c| c.kind == kind).all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAILED" };
            match c.index {
                Some(i) => writeln!(f, "{} [{}]: {}", c.kind.label(), i + 1, status)?,
                None => writeln!(f, "{}: {}", c.kind.label(), status)?,
            }
        }
        Ok(())
    }
}

/// Re-checks the identities a presentation rests on. Cofactor certificates
/// are expanded back and compared, so a passing check does not depend on
/// the correctness of the normal form alone.
pub fn verify_presentation<F: Scalar>(p: &SmoothPresentation<F>) -> VerificationReport {
    let mut report = VerificationReport::default();
    let order = p.universe().order();
    let f = p.system();
    let g = p.g_cleared();
    let de = p.d.pow(p.e);
    let scale = &de * &p.d;

    let fh = with_j(p, f.iter().chain(&p.h).cloned().collect());
    for (i, gi) in g.iter().enumerate() {
        let target = &scale * gi;
        let cert = fh.certify(&target);
        let passed = cert.remainder.is_zero() && cert.holds(&target, fh.generators(), &order);
        report.checks.push(CertificateCheck { kind: CertificateKind::ScaledGInFH, index: Some(i), passed });
    }

    let hg = with_j(p, p.h.iter().chain(&g).cloned().collect()).rabinowitsch(&[p.s.clone(), p.s_prime.clone()]);
    for (i, q) in p.generators.iter().enumerate() {
        report.checks.push(CertificateCheck {
            kind: CertificateKind::IInSaturation,
            index: Some(i),
            passed: hg.is_member(q),
        });
    }

    let at_origin: BTreeMap<Var, Polynomial<F>> = p.t_vars().into_iter().map(|t| (t, Polynomial::zero())).collect();
    let units_ok = p.s.substitute(&at_origin).is_one() && p.s_prime.substitute(&at_origin).is_one();
    report.checks.push(CertificateCheck { kind: CertificateKind::UnitsAtOrigin, index: None, passed: units_ok });

    let h_ideal = with_j(p, p.h.clone());
    let at_approx: BTreeMap<Var, Polynomial<F>> =
        p.universe().unknown_vars().into_iter().zip(p.approx.iter().cloned()).collect();
    let ts = p.t_vars();
    let d2e = de.pow(2);
    for (i, fi) in f.iter().enumerate() {
        let expected = &(&fi.substitute(&at_approx) + &(&scale * &Polynomial::var(ts[i]))) + &(&d2e * &p.q[i]);
        let diff = fi - &expected;
        let cert = h_ideal.certify(&diff);
        let passed = cert.remainder.is_zero() && cert.holds(&diff, h_ideal.generators(), &order);
        report.checks.push(CertificateCheck { kind: CertificateKind::TaylorCongruence, index: Some(i), passed });
    }
    report
}
