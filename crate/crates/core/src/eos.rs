//! Mixture pressure law, its derivatives, and the potential energy density.
//!
//! With `b = k0 - m - a0 n` and `c = 4 k0 a0 n` the common pressure of both
//! phases is `P = c0 (-b + sqrt(b^2 + c))`, where `c0 = a_l^2 / 2`,
//! `k0 = rho_l0 - P_l0 / a_l^2` and `a0 = (a_g / a_l)^2`.

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSettings};

/// Below this value of `b^2 + c` derivative evaluations are refused.
pub const DEFAULT_DEGENERACY_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosParams {
    a_l: f64,
    a_g: f64,
    rho_l0: f64,
    p_l0: f64,
    m_tilde: f64,
    n_tilde: f64,
    c0: f64,
    k0: f64,
    a0: f64,
    p_far: f64,
    degeneracy_floor: f64,
}

impl EosParams {
    pub fn new(
        a_l: f64,
        a_g: f64,
        rho_l0: f64,
        p_l0: f64,
        m_tilde: f64,
        n_tilde: f64,
    ) -> Result<Self> {
        let mut problems = Vec::new();
        let all = [
            ("a_l", a_l),
            ("a_g", a_g),
            ("rho_l0", rho_l0),
            ("P_l0", p_l0),
            ("m_tilde", m_tilde),
            ("n_tilde", n_tilde),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                problems.push(format!("eos.{name} must be finite"));
            }
        }
        if !(a_l > 0.0) {
            problems.push("eos.a_l > 0 violated".to_string());
        }
        if !(a_g > 0.0) {
            problems.push("eos.a_g > 0 violated".to_string());
        }
        if !(rho_l0 > 0.0) {
            problems.push("eos.rho_l0 > 0 violated".to_string());
        }
        if !(p_l0 >= 0.0) {
            problems.push("eos.P_l0 >= 0 violated".to_string());
        }
        if !(m_tilde > 0.0) {
            problems.push("eos.m_tilde > 0 violated".to_string());
        }
        if !(n_tilde > 0.0) {
            problems.push("eos.n_tilde > 0 violated".to_string());
        }
        let k0 = rho_l0 - p_l0 / (a_l * a_l);
        if problems.is_empty() && !(k0 > 0.0) {
            problems.push(format!("k0 = rho_l0 - P_l0/a_l^2 > 0 violated (k0 = {k0})"));
        }
        if !problems.is_empty() {
            return Err(Error::Parameter(problems.join("; ")));
        }

        let mut p = Self {
            a_l,
            a_g,
            rho_l0,
            p_l0,
            m_tilde,
            n_tilde,
            c0: 0.5 * a_l * a_l,
            k0,
            a0: (a_g / a_l).powi(2),
            p_far: 0.0,
            degeneracy_floor: DEFAULT_DEGENERACY_FLOOR,
        };
        p.p_far = p.pressure(m_tilde, n_tilde)?;
        Ok(p)
    }

    pub fn with_degeneracy_floor(mut self, floor: f64) -> Self {
        self.degeneracy_floor = floor;
        self
    }

    pub fn a_l(&self) -> f64 {
        self.a_l
    }
    pub fn a_g(&self) -> f64 {
        self.a_g
    }
    pub fn rho_l0(&self) -> f64 {
        self.rho_l0
    }
    pub fn p_l0(&self) -> f64 {
        self.p_l0
    }
    pub fn m_tilde(&self) -> f64 {
        self.m_tilde
    }
    pub fn n_tilde(&self) -> f64 {
        self.n_tilde
    }
    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn k0(&self) -> f64 {
        self.k0
    }
    pub fn a0(&self) -> f64 {
        self.a0
    }
    pub fn degeneracy_floor(&self) -> f64 {
        self.degeneracy_floor
    }

    /// Pressure of the far-field state, `P(m_tilde, n_tilde)`.
    pub fn p_far(&self) -> f64 {
        self.p_far
    }

    fn b(&self, m: f64, n: f64) -> f64 {
        self.k0 - m - self.a0 * n
    }

    fn c(&self, n: f64) -> f64 {
        4.0 * self.k0 * self.a0 * n
    }

    fn check_point(m: f64, n: f64) -> Result<()> {
        if !m.is_finite() || !n.is_finite() {
            return Err(Error::Domain(format!("non-finite state (m = {m}, n = {n})")));
        }
        if m < 0.0 || n < 0.0 {
            return Err(Error::Domain(format!("negative mass (m = {m}, n = {n})")));
        }
        Ok(())
    }

    /// `sqrt(b^2 + c)` for derivative evaluations, refusing the degenerate set.
    fn root_strict(&self, m: f64, n: f64) -> Result<(f64, f64)> {
        if !(m > 0.0 && n > 0.0) || !m.is_finite() || !n.is_finite() {
            return Err(Error::Domain(format!(
                "pressure derivatives need m > 0 and n > 0 (m = {m}, n = {n})"
            )));
        }
        let b = self.b(m, n);
        let disc = b * b + self.c(n);
        if disc < self.degeneracy_floor {
            return Err(Error::Degenerate { m, n, disc });
        }
        Ok((b, disc.sqrt()))
    }

    pub fn pressure(&self, m: f64, n: f64) -> Result<f64> {
        Self::check_point(m, n)?;
        let b = self.b(m, n);
        let c = self.c(n);
        let r = (b * b + c).sqrt();
        // -b + r loses everything to cancellation when b > 0 and c << b^2.
        let bracket = if b > 0.0 { c / (b + r) } else { r - b };
        Ok(self.c0 * bracket)
    }

    /// `(dP/dm, dP/dn)`.
    pub fn pressure_grad(&self, m: f64, n: f64) -> Result<(f64, f64)> {
        let (b, r) = self.root_strict(m, n)?;
        let c = self.c(n);
        let pm_bracket = if b > 0.0 { c / (r * (r + b)) } else { 1.0 - b / r };
        let pm = self.c0 * pm_bracket;
        let pn = self.c0 * self.a0 * (1.0 + (m + self.a0 * n + self.k0) / r);
        Ok((pm, pn))
    }

    /// `d^2 P / dn^2`, strictly negative for `m > 0`.
    pub fn pressure_hess_nn(&self, m: f64, n: f64) -> Result<f64> {
        let (_, r) = self.root_strict(m, n)?;
        Ok(-4.0 * self.c0 * self.a0 * self.a0 * self.k0 * m / (r * r * r))
    }

    pub fn potential_energy_g(&self, m: f64, n: f64) -> Result<f64> {
        self.potential_energy_g_with(m, n, &QuadratureSettings::default())
    }

    /// Potential energy density `G(m, n/m)` relative to the far-field state.
    ///
    /// `G = m * int_{m~}^{m} [P(s, r s) - P~] / s^2 ds + (m/m~) (P~ - P(m~, r m~))`
    /// with the mass ratio `r = n/m` frozen along the integration path.
    pub fn potential_energy_g_with(
        &self,
        m: f64,
        n: f64,
        settings: &QuadratureSettings,
    ) -> Result<f64> {
        Self::check_point(m, n)?;
        if m == 0.0 {
            return Err(Error::Domain("potential energy needs m > 0".to_string()));
        }
        let ratio = n / m;
        let p_far = self.p_far;
        let integral = if m == self.m_tilde {
            0.0
        } else {
            quadrature::integrate(
                |s| Ok((self.pressure(s, ratio * s)? - p_far) / (s * s)),
                self.m_tilde,
                m,
                settings,
            )?
        };
        // n * (m~/m) is exactly n when m == m~, so G(m~, n~) is exactly zero.
        let ray_pressure = self.pressure(self.m_tilde, n * (self.m_tilde / m))?;
        Ok(m * integral + (m / self.m_tilde) * (p_far - ray_pressure))
    }
}

/// The pressure law as seen by property sweeps; lets tests substitute a
/// deliberately broken law.
pub trait PressureLaw {
    fn pressure(&self, m: f64, n: f64) -> Result<f64>;
    fn pressure_grad(&self, m: f64, n: f64) -> Result<(f64, f64)>;
    fn pressure_hess_nn(&self, m: f64, n: f64) -> Result<f64>;
    /// Liquid mass at which the second derivative blows up as `n -> 0`.
    fn k0(&self) -> f64;
}

impl PressureLaw for EosParams {
    fn pressure(&self, m: f64, n: f64) -> Result<f64> {
        EosParams::pressure(self, m, n)
    }
    fn pressure_grad(&self, m: f64, n: f64) -> Result<(f64, f64)> {
        EosParams::pressure_grad(self, m, n)
    }
    fn pressure_hess_nn(&self, m: f64, n: f64) -> Result<f64> {
        EosParams::pressure_hess_nn(self, m, n)
    }
    fn k0(&self) -> f64 {
        self.k0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViscosityParams {
    mu: f64,
    lambda: f64,
}

impl ViscosityParams {
    /// Requires `mu > 0` and `2 mu + 3 lambda >= 0`, which gives `mu + lambda > 0`.
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        if !mu.is_finite() || !lambda.is_finite() {
            return Err(Error::Parameter("viscosities must be finite".to_string()));
        }
        if !(mu > 0.0) {
            return Err(Error::Parameter(format!("mu > 0 violated (mu = {mu})")));
        }
        if !(2.0 * mu + 3.0 * lambda >= 0.0) {
            return Err(Error::Parameter(format!(
                "2*mu+3*lambda >= 0 violated (2*mu+3*lambda = {}), so mu + lambda > 0 cannot be guaranteed",
                2.0 * mu + 3.0 * lambda
            )));
        }
        debug_assert!(mu + lambda > 0.0);
        Ok(Self { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    /// `2 mu + lambda`, the longitudinal viscosity.
    pub fn longitudinal(&self) -> f64 {
        2.0 * self.mu + self.lambda
    }
}

/// Exponents used only for reporting: `q` is validated but otherwise inert,
/// `theta` sets the smallness threshold `2 E0^theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisParams {
    q: f64,
    theta: f64,
}

impl AnalysisParams {
    pub fn new(q: f64, theta: f64, visc: &ViscosityParams) -> Result<Self> {
        let mut problems = Vec::new();
        if !(q > 1.0 && q < 4.0 / 3.0) {
            problems.push(format!("q in (1, 4/3) violated (q = {q})"));
        }
        let bound = 4.0 * visc.mu() / (visc.mu() + visc.lambda());
        if !(q * q < bound) {
            problems.push(format!(
                "q^2 < 4*mu/(mu+lambda) violated (q^2 = {}, bound = {bound})",
                q * q
            ));
        }
        if !(visc.lambda() < 3.0 * visc.mu()) {
            problems.push("lambda < 3*mu violated".to_string());
        }
        if !(theta > 0.0 && theta < 1.0) {
            problems.push(format!("theta in (0, 1) violated (theta = {theta})"));
        }
        if problems.is_empty() {
            Ok(Self { q, theta })
        } else {
            Err(Error::Parameter(problems.join("; ")))
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
}
