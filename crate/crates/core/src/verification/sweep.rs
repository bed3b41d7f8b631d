//! Property sweep of a pressure law over a log-spaced `(m, n)` grid.

use std::fmt;

use crate::eos::PressureLaw;

use super::convergence::fit_order;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub m_range: (f64, f64),
    pub n_range: (f64, f64),
    /// Points per axis.
    pub points: usize,
    /// Central-difference step relative to `max(1, |x|)`.
    pub fd_step: f64,
    pub fd_tol: f64,
    /// `n = 2^-k` along `m = k0` for `k` in this inclusive range.
    pub blowup_k: (i32, i32),
    pub blowup_slope: f64,
    pub blowup_tol: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            m_range: (1e-2, 1e2),
            n_range: (1e-2, 1e2),
            points: 64,
            fd_step: 1e-6,
            fd_tol: 1e-6,
            blowup_k: (4, 20),
            blowup_slope: -1.5,
            blowup_tol: 0.1,
        }
    }
}

/// A failed check and where it failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub check: &'static str,
    pub m: f64,
    pub n: f64,
    pub value: f64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at (m = {:e}, n = {:e}): {:e}", self.check, self.m, self.n, self.value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub points: usize,
    pub violations: Vec<Witness>,
    pub max_fd_rel_err: f64,
    /// Fitted log-log slope of `|P_nn|` against `n` along `m = k0`.
    pub blowup_slope: f64,
    pub blowup_ok: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.blowup_ok
    }

    pub fn summary_line(&self) -> String {
        format!(
            "check-eos: {} points, {} violations, max FD rel err {:.3e}, P_nn blow-up slope {:.4} {}",
            self.points,
            self.violations.len(),
            self.max_fd_rel_err,
            self.blowup_slope,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn log_space(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..k)
        .map(|i| (a + (b - a) * i as f64 / (k - 1) as f64).exp())
        .collect()
}

/// Checks `P >= 0`, `P_m > 0`, `P_n > 0`, `P_nn < 0`, first derivatives
/// against central differences, and the `n^(-3/2)` growth of `P_nn` along
/// `m = k0`. Every failure is kept with its witness point.
pub fn eos_property_sweep<L: PressureLaw + ?Sized>(law: &L, settings: &SweepSettings) -> SweepReport {
    let ms = log_space(settings.m_range.0, settings.m_range.1, settings.points);
    let ns = log_space(settings.n_range.0, settings.n_range.1, settings.points);
    let mut violations = Vec::new();
    let mut max_rel: f64 = 0.0;

    for &m in &ms {
        for &n in &ns {
            let mut fail = |check, value| violations.push(Witness { check, m, n, value });
            let (p, (pm, pn), pnn) = match (law.pressure(m, n), law.pressure_grad(m, n), law.pressure_hess_nn(m, n)) {
                (Ok(p), Ok(g), Ok(h)) => (p, g, h),
                _ => {
                    fail("evaluation", f64::NAN);
                    continue;
                }
            };
            if !(p >= 0.0) {
                fail("P >= 0", p);
            }
            if !(pm > 0.0) {
                fail("P_m > 0", pm);
            }
            if !(pn > 0.0) {
                fail("P_n > 0", pn);
            }
            if !(pnn < 0.0) {
                fail("P_nn < 0", pnn);
            }
            let hm = settings.fd_step * m.abs().max(1.0);
            let hn = settings.fd_step * n.abs().max(1.0);
            let fd = (
                law.pressure(m + hm, n).and_then(|a| law.pressure(m - hm, n).map(|b| (a - b) / (2.0 * hm))),
                law.pressure(m, n + hn).and_then(|a| law.pressure(m, n - hn).map(|b| (a - b) / (2.0 * hn))),
            );
            match fd {
                (Ok(fm), Ok(fn_)) => {
                    for (check, analytic, numeric) in [("FD P_m", pm, fm), ("FD P_n", pn, fn_)] {
                        let rel = (analytic - numeric).abs() / analytic.abs().max(f64::MIN_POSITIVE);
                        max_rel = max_rel.max(rel);
                        if !(rel <= settings.fd_tol) {
                            fail(check, rel);
                        }
                    }
                }
                _ => fail("FD evaluation", f64::NAN),
            }
        }
    }

    let k0 = law.k0();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in settings.blowup_k.0..=settings.blowup_k.1 {
        let n = 2f64.powi(-k);
        match law.pressure_hess_nn(k0, n) {
            Ok(h) if h != 0.0 && h.is_finite() => {
                xs.push(n);
                ys.push(h.abs());
            }
            Ok(h) => violations.push(Witness {
                check: "P_nn blow-up sample",
                m: k0,
                n,
                value: h,
            }),
            Err(_) => violations.push(Witness {
                check: "P_nn blow-up evaluation",
                m: k0,
                n,
                value: f64::NAN,
            }),
        }
    }
    let slope = if xs.len() >= 2 { fit_order(&xs, &ys) } else { f64::NAN };
    let blowup_ok = (slope - settings.blowup_slope).abs() <= settings.blowup_tol;
    if !blowup_ok {
        violations.push(Witness {
            check: "P_nn blow-up slope",
            m: k0,
            n: xs.first().copied().unwrap_or(f64::NAN),
            value: slope,
        });
    }

    SweepReport {
        points: ms.len() * ns.len(),
        violations,
        max_fd_rel_err: max_rel,
        blowup_slope: slope,
        blowup_ok,
    }
}
