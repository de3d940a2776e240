//! The three barrier families, their superpotentials and parameter chains,
//! dimensionless parameters, and shape-invariance verification.
//!
//! Each family factorizes as `V(x) = W(x,a1)^2 - (hbar/sqrt(2m)) W'(x,a1) + const`
//! for a superpotential `W` that is linear in a complex parameter chain
//! `a1 -> a2 -> ...`. The chain step and the constant remainders
//! `R(a_n) = a_n^2 - a_{n+1}^2` encode the scattering energy once the partial
//! sums are continued to a complex index; [`mu_for_energy`] returns that
//! continued index.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Action and mass constants of the problem. Defaults to `hbar = m = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem {
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite() && mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain(format!(
                "unit constants must be positive and finite: hbar = {hbar}, mass = {mass}"
            )));
        }
        Ok(UnitSystem { hbar, mass })
    }

    /// hbar / sqrt(2m), the factor multiplying W' in the factorization.
    pub fn w_prime_scale(&self) -> f64 {
        self.hbar / (2.0 * self.mass).sqrt()
    }
}

/// Shape of the barrier, with its physical parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BarrierShape {
    /// `V(x) = V0 - (1/2) m Omega^2 x^2`
    Parabolic { v0: f64, omega: f64 },
    /// `V(x) = V0 (2 e^{x/b} - e^{2x/b})`
    Morse { v0: f64, b: f64 },
    /// `V(x) = V0 sech^2(x / 2b)`
    Eckart { v0: f64, b: f64 },
}

/// A barrier family plus the unit system it is expressed in.
///
/// All three potentials peak at the origin with `V(0) = V0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierSpec {
    pub shape: BarrierShape,
    pub units: UnitSystem,
}

/// Branch selection for the pervasive sign pairs of the ladder construction.
/// Transmission and reflection are invariant under the choice; amplitudes may
/// differ by phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignChoice {
    #[default]
    Upper,
    Lower,
}

impl SignChoice {
    pub fn signum(self) -> f64 {
        match self {
            SignChoice::Upper => 1.0,
            SignChoice::Lower => -1.0,
        }
    }
}

/// Dimensionless parameters of a barrier at a given energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DimensionlessParams {
    /// `epsilon0 = hbar Omega / 2`, `lambda = (V0 - E) / epsilon0`
    Parabolic { epsilon0: f64, lambda: f64 },
    /// `epsilon = hbar^2 / (8 m b^2)`, `s = sqrt(V0/epsilon)`,
    /// `r = sqrt(E/epsilon) = 2 b k`, `k = sqrt(2 m E) / hbar`
    Morse { epsilon: f64, s: f64, r: f64, k: f64 },
    /// `epsilon = hbar^2 / (32 m b^2)`, `s = sqrt(V0/epsilon - 1)` (imaginary
    /// below threshold), `r = sqrt(E/epsilon) = 4 b k`
    Eckart {
        epsilon: f64,
        s: Complex64,
        r: f64,
        k: f64,
    },
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Domain(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

impl BarrierSpec {
    pub fn parabolic(v0: f64, omega: f64) -> Result<Self> {
        Self::parabolic_with_units(v0, omega, UnitSystem::default())
    }

    pub fn parabolic_with_units(v0: f64, omega: f64, units: UnitSystem) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("Omega", omega)?;
        Ok(BarrierSpec {
            shape: BarrierShape::Parabolic { v0, omega },
            units,
        })
    }

    pub fn morse(v0: f64, b: f64) -> Result<Self> {
        Self::morse_with_units(v0, b, UnitSystem::default())
    }

    pub fn morse_with_units(v0: f64, b: f64, units: UnitSystem) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("b", b)?;
        Ok(BarrierSpec {
            shape: BarrierShape::Morse { v0, b },
            units,
        })
    }

    pub fn eckart(v0: f64, b: f64) -> Result<Self> {
        Self::eckart_with_units(v0, b, UnitSystem::default())
    }

    pub fn eckart_with_units(v0: f64, b: f64, units: UnitSystem) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("b", b)?;
        Ok(BarrierSpec {
            shape: BarrierShape::Eckart { v0, b },
            units,
        })
    }

    pub fn v0(&self) -> f64 {
        match self.shape {
            BarrierShape::Parabolic { v0, .. }
            | BarrierShape::Morse { v0, .. }
            | BarrierShape::Eckart { v0, .. } => v0,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.shape {
            BarrierShape::Parabolic { .. } => "parabolic",
            BarrierShape::Morse { .. } => "morse",
            BarrierShape::Eckart { .. } => "eckart",
        }
    }

    /// The barrier potential `V(x)`.
    pub fn potential(&self, x: f64) -> f64 {
        let m = self.units.mass;
        match self.shape {
            BarrierShape::Parabolic { v0, omega } => v0 - 0.5 * m * omega * omega * x * x,
            BarrierShape::Morse { v0, b } => {
                let u = (x / b).exp();
                v0 * (2.0 * u - u * u)
            }
            BarrierShape::Eckart { v0, b } => {
                let sech = 1.0 / (x / (2.0 * b)).cosh();
                v0 * sech * sech
            }
        }
    }

    /// dV/dx, used by the oracle's window selection and restart stepping.
    pub fn potential_derivative(&self, x: f64) -> f64 {
        let m = self.units.mass;
        match self.shape {
            BarrierShape::Parabolic { omega, .. } => -m * omega * omega * x,
            BarrierShape::Morse { v0, b } => {
                let u = (x / b).exp();
                2.0 * v0 / b * (u - u * u)
            }
            BarrierShape::Eckart { v0, b } => {
                let y = x / (2.0 * b);
                let sech = 1.0 / y.cosh();
                -(v0 / b) * sech * sech * y.tanh()
            }
        }
    }

    /// d2V/dx2.
    pub fn potential_second_derivative(&self, x: f64) -> f64 {
        let m = self.units.mass;
        match self.shape {
            BarrierShape::Parabolic { omega, .. } => -m * omega * omega,
            BarrierShape::Morse { v0, b } => {
                let u = (x / b).exp();
                2.0 * v0 / (b * b) * (u - 2.0 * u * u)
            }
            BarrierShape::Eckart { v0, b } => {
                let y = x / (2.0 * b);
                let sech2 = 1.0 / y.cosh().powi(2);
                let tanh2 = y.tanh().powi(2);
                -(v0 / (2.0 * b * b)) * sech2 * (sech2 - 2.0 * tanh2)
            }
        }
    }

    /// d3V/dx3.
    pub fn potential_third_derivative(&self, x: f64) -> f64 {
        match self.shape {
            BarrierShape::Parabolic { .. } => 0.0,
            BarrierShape::Morse { v0, b } => {
                let u = (x / b).exp();
                2.0 * v0 / (b * b * b) * (u - 4.0 * u * u)
            }
            BarrierShape::Eckart { v0, b } => {
                let y = x / (2.0 * b);
                let sech2 = 1.0 / y.cosh().powi(2);
                let t = y.tanh();
                -(v0 / (b * b * b)) / 4.0 * sech2 * t * (4.0 * t * t - 8.0 * sech2)
            }
        }
    }

    /// Characteristic length: `sqrt(hbar/(m Omega))` (parabolic) or the
    /// range parameter `b`.
    pub fn length_scale(&self) -> f64 {
        match self.shape {
            BarrierShape::Parabolic { omega, .. } => {
                (self.units.hbar / (self.units.mass * omega)).sqrt()
            }
            BarrierShape::Morse { b, .. } | BarrierShape::Eckart { b, .. } => b,
        }
    }

    /// The energy scale of the family: `hbar Omega / 2` (parabolic),
    /// `hbar^2/(8 m b^2)` (Morse), `hbar^2/(32 m b^2)` (Eckart).
    pub fn epsilon(&self) -> f64 {
        let (hbar, m) = (self.units.hbar, self.units.mass);
        match self.shape {
            BarrierShape::Parabolic { omega, .. } => 0.5 * hbar * omega,
            BarrierShape::Morse { b, .. } => hbar * hbar / (8.0 * m * b * b),
            BarrierShape::Eckart { b, .. } => hbar * hbar / (32.0 * m * b * b),
        }
    }

    /// The strength parameter `s` (complex for sub-threshold Eckart barriers).
    pub fn s_parameter(&self) -> Complex64 {
        let eps = self.epsilon();
        match self.shape {
            BarrierShape::Parabolic { .. } => Complex64::new(0.0, 0.0),
            BarrierShape::Morse { v0, .. } => Complex64::new((v0 / eps).sqrt(), 0.0),
            BarrierShape::Eckart { v0, .. } => {
                let q = v0 / eps - 1.0;
                if q >= 0.0 {
                    Complex64::new(q.sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, (-q).sqrt())
                }
            }
        }
    }

    /// First parameter of the chain for the given branch.
    pub fn a1(&self, sign: SignChoice) -> Complex64 {
        let sg = sign.signum();
        let eps = self.epsilon();
        match self.shape {
            // a1 = +- i sqrt(m/2) Omega
            BarrierShape::Parabolic { omega, .. } => {
                Complex64::new(0.0, sg * (self.units.mass / 2.0).sqrt() * omega)
            }
            // a1 = sqrt(eps) (1 -+ i s)
            BarrierShape::Morse { .. } => {
                (Complex64::new(1.0, 0.0) - Complex64::new(0.0, sg) * self.s_parameter())
                    * eps.sqrt()
            }
            // a1 = sqrt(eps) (-1 +- i s)
            BarrierShape::Eckart { .. } => {
                (Complex64::new(-1.0, 0.0) + Complex64::new(0.0, sg) * self.s_parameter())
                    * eps.sqrt()
            }
        }
    }

    /// Exponential prefactor of the Morse superpotential, `alpha = +- i sqrt(V0)`.
    pub fn morse_alpha(&self, sign: SignChoice) -> Result<Complex64> {
        match self.shape {
            BarrierShape::Morse { v0, .. } => Ok(Complex64::new(0.0, sign.signum() * v0.sqrt())),
            _ => Err(Error::Domain("morse_alpha on a non-Morse barrier".into())),
        }
    }

    /// The superpotential `W(x, a)` of the family, at chain parameter `a`.
    pub fn superpotential(&self, sign: SignChoice, a: Complex64, x: f64) -> Complex64 {
        match self.shape {
            BarrierShape::Parabolic { .. } => a * x,
            BarrierShape::Morse { v0, b } => {
                let alpha = Complex64::new(0.0, sign.signum() * v0.sqrt());
                a + alpha * (x / b).exp()
            }
            BarrierShape::Eckart { b, .. } => a * (x / (2.0 * b)).tanh(),
        }
    }

    /// dW/dx, analytic per family.
    pub fn superpotential_derivative(&self, sign: SignChoice, a: Complex64, x: f64) -> Complex64 {
        match self.shape {
            BarrierShape::Parabolic { .. } => a,
            BarrierShape::Morse { v0, b } => {
                let alpha = Complex64::new(0.0, sign.signum() * v0.sqrt());
                alpha * (x / b).exp() / b
            }
            BarrierShape::Eckart { b, .. } => {
                let sech = 1.0 / (x / (2.0 * b)).cosh();
                a * sech * sech / (2.0 * b)
            }
        }
    }

    /// Local wavenumber `k = sqrt(2 m E) / hbar` (requires E > 0).
    pub fn wavenumber(&self, e: f64) -> Result<f64> {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::Domain(format!(
                "wavenumber requires E > 0, got {e}"
            )));
        }
        Ok((2.0 * self.units.mass * e).sqrt() / self.units.hbar)
    }

    /// Dimensionless parameters at energy `e`.
    ///
    /// Parabolic accepts any finite energy; Morse and Eckart require `E > 0`.
    pub fn dimensionless(&self, e: f64) -> Result<DimensionlessParams> {
        if !e.is_finite() {
            return Err(Error::Domain(format!("energy must be finite, got {e}")));
        }
        match self.shape {
            BarrierShape::Parabolic { v0, .. } => {
                let epsilon0 = self.epsilon();
                Ok(DimensionlessParams::Parabolic {
                    epsilon0,
                    lambda: (v0 - e) / epsilon0,
                })
            }
            BarrierShape::Morse { .. } => {
                let k = self.wavenumber(e)?;
                let epsilon = self.epsilon();
                Ok(DimensionlessParams::Morse {
                    epsilon,
                    s: self.s_parameter().re,
                    r: (e / epsilon).sqrt(),
                    k,
                })
            }
            BarrierShape::Eckart { .. } => {
                let k = self.wavenumber(e)?;
                let epsilon = self.epsilon();
                Ok(DimensionlessParams::Eckart {
                    epsilon,
                    s: self.s_parameter(),
                    r: (e / epsilon).sqrt(),
                    k,
                })
            }
        }
    }
}

/// A shape-invariant superpotential family: `W`, its x-derivative, the
/// parameter-chain step, the remainder constants, and the linear-shift
/// function `zeta` with `W(x, a_n) = W(x, a_1) + (n-1) zeta(x)`.
///
/// The three built-in families are constructed by
/// [`ShapeInvariantFamily::for_barrier`]; custom families can be assembled
/// from closures with [`ShapeInvariantFamily::from_parts`].
pub struct ShapeInvariantFamily {
    w: Box<dyn Fn(f64, Complex64) -> Complex64 + Send + Sync>,
    w_prime: Box<dyn Fn(f64, Complex64) -> Complex64 + Send + Sync>,
    param_step: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    remainder: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    zeta: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
    a1: Complex64,
    /// hbar / sqrt(2m)
    w_prime_scale: f64,
}

impl ShapeInvariantFamily {
    pub fn from_parts(
        w: impl Fn(f64, Complex64) -> Complex64 + Send + Sync + 'static,
        w_prime: impl Fn(f64, Complex64) -> Complex64 + Send + Sync + 'static,
        param_step: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        remainder: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        zeta: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        a1: Complex64,
        units: UnitSystem,
    ) -> Self {
        ShapeInvariantFamily {
            w: Box::new(w),
            w_prime: Box::new(w_prime),
            param_step: Box::new(param_step),
            remainder: Box::new(remainder),
            zeta: Box::new(zeta),
            a1,
            w_prime_scale: units.w_prime_scale(),
        }
    }

    /// The built-in family for a barrier and branch choice.
    pub fn for_barrier(spec: &BarrierSpec, sign: SignChoice) -> Self {
        let a1 = spec.a1(sign);
        let sg = sign.signum();
        let eps = spec.epsilon();
        let sqrt_eps = eps.sqrt();
        let spec_w = *spec;
        let spec_wp = *spec;
        let w = move |x: f64, a: Complex64| spec_w.superpotential(sign, a, x);
        let w_prime = move |x: f64, a: Complex64| spec_wp.superpotential_derivative(sign, a, x);
        match spec.shape {
            BarrierShape::Parabolic { .. } => Self::from_parts(
                w,
                w_prime,
                |a| a,
                move |_| Complex64::new(0.0, sg * 2.0 * eps),
                |_| Complex64::new(0.0, 0.0),
                a1,
                spec.units,
            ),
            BarrierShape::Morse { .. } => Self::from_parts(
                w,
                w_prime,
                move |a| a + 2.0 * sqrt_eps,
                move |a| {
                    let next = a + 2.0 * sqrt_eps;
                    a * a - next * next
                },
                move |_| Complex64::new(2.0 * sqrt_eps, 0.0),
                a1,
                spec.units,
            ),
            BarrierShape::Eckart { b, .. } => Self::from_parts(
                w,
                w_prime,
                move |a| a - 2.0 * sqrt_eps,
                move |a| {
                    let next = a - 2.0 * sqrt_eps;
                    a * a - next * next
                },
                move |x| Complex64::new(-2.0 * sqrt_eps * (x / (2.0 * b)).tanh(), 0.0),
                a1,
                spec.units,
            ),
        }
    }

    pub fn w(&self, x: f64, a: Complex64) -> Complex64 {
        (self.w)(x, a)
    }

    pub fn w_prime(&self, x: f64, a: Complex64) -> Complex64 {
        (self.w_prime)(x, a)
    }

    pub fn param_step(&self, a: Complex64) -> Complex64 {
        (self.param_step)(a)
    }

    pub fn remainder(&self, a: Complex64) -> Complex64 {
        (self.remainder)(a)
    }

    pub fn zeta(&self, x: f64) -> Complex64 {
        (self.zeta)(x)
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    /// n-th chain parameter, `a_1` for `n = 1`.
    pub fn a_n(&self, n: u32) -> Complex64 {
        let mut a = self.a1;
        for _ in 1..n {
            a = self.param_step(a);
        }
        a
    }
}

/// Result of [`verify_factorization`]: the x-independent constant by which
/// `W^2 - (hbar/sqrt 2m) W'` differs from `V(x)`, and the largest deviation
/// from constancy over the grid.
#[derive(Clone, Copy, Debug)]
pub struct FactorizationCheck {
    pub residual_constant: Complex64,
    pub max_deviation: f64,
}

/// Checks `V(x) = W(x,a1)^2 - (hbar/sqrt 2m) W'(x,a1) - const` on a grid.
///
/// The constant is `-V0 -+ i eps0` for the parabolic family and `a1^2` for
/// Morse and Eckart; it belongs to the ladder algebra and is never added to
/// the physical potential.
pub fn verify_factorization(
    spec: &BarrierSpec,
    sign: SignChoice,
    grid: &[f64],
) -> Result<FactorizationCheck> {
    if grid.len() < 2 {
        return Err(Error::Domain(
            "verify_factorization needs at least 2 grid points".into(),
        ));
    }
    let a1 = spec.a1(sign);
    let c = spec.units.w_prime_scale();
    let deltas: Vec<Complex64> = grid
        .iter()
        .map(|&x| {
            let w = spec.superpotential(sign, a1, x);
            let wp = spec.superpotential_derivative(sign, a1, x);
            w * w - c * wp - spec.potential(x)
        })
        .collect();
    let mean = deltas.iter().sum::<Complex64>() / deltas.len() as f64;
    let max_deviation = deltas
        .iter()
        .map(|d| (d - mean).norm())
        .fold(0.0, f64::max);
    Ok(FactorizationCheck {
        residual_constant: mean,
        max_deviation,
    })
}

/// Max residual of the shape-invariance condition
/// `W(x,a1)^2 + c W'(x,a1) - W(x,a2)^2 + c W'(x,a2) - R(a1)` over the grid,
/// with `c = hbar/sqrt(2m)`.
pub fn verify_shape_invariance(family: &ShapeInvariantFamily, grid: &[f64]) -> f64 {
    let a1 = family.a1();
    let a2 = family.param_step(a1);
    let r1 = family.remainder(a1);
    let c = family.w_prime_scale;
    grid.iter()
        .map(|&x| {
            let w1 = family.w(x, a1);
            let w2 = family.w(x, a2);
            (w1 * w1 + c * family.w_prime(x, a1) - w2 * w2 + c * family.w_prime(x, a2) - r1).norm()
        })
        .fold(0.0, f64::max)
}

/// Max residual of the linear-shift condition
/// `W(x, a_n) = W(x, a_1) + (n-1) zeta(x)` with `zeta(x) = W(x,a2) - W(x,a1)`.
pub fn verify_linear_shift(family: &ShapeInvariantFamily, n: u32, grid: &[f64]) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("verify_linear_shift requires n >= 2".into()));
    }
    let a1 = family.a1();
    let a2 = family.param_step(a1);
    let an = family.a_n(n);
    Ok(grid
        .iter()
        .map(|&x| {
            let zeta = family.w(x, a2) - family.w(x, a1);
            (family.w(x, an) - family.w(x, a1) - (n - 1) as f64 * zeta).norm()
        })
        .fold(0.0, f64::max))
}

/// The eigenvalue constant of the ladder equation: `Lambda = E - V0 -+ i eps0`
/// (parabolic) or `Lambda = E + a1^2` (Morse, Eckart).
pub fn lambda_constant(spec: &BarrierSpec, e: f64, sign: SignChoice) -> Complex64 {
    match spec.shape {
        BarrierShape::Parabolic { v0, .. } => {
            Complex64::new(e - v0, -sign.signum() * spec.epsilon())
        }
        BarrierShape::Morse { .. } | BarrierShape::Eckart { .. } => {
            let a1 = spec.a1(sign);
            a1 * a1 + e
        }
    }
}

/// The continued partial sum of remainders evaluated at complex index `mu`:
/// `+-2 i mu eps0` (parabolic) or `a1^2 - a_{mu+1}^2` with
/// `a_{mu+1} = a1 +- 2 sqrt(eps) mu` (Morse +, Eckart -).
pub fn remainder_sum(spec: &BarrierSpec, mu: Complex64, sign: SignChoice) -> Complex64 {
    let eps = spec.epsilon();
    match spec.shape {
        BarrierShape::Parabolic { .. } => Complex64::new(0.0, 2.0 * sign.signum() * eps) * mu,
        BarrierShape::Morse { .. } => {
            let a1 = spec.a1(sign);
            let a_end = a1 + 2.0 * eps.sqrt() * mu;
            a1 * a1 - a_end * a_end
        }
        BarrierShape::Eckart { .. } => {
            let a1 = spec.a1(sign);
            let a_end = a1 - 2.0 * eps.sqrt() * mu;
            a1 * a1 - a_end * a_end
        }
    }
}

/// The analytically continued ladder index solving
/// `sum_{k=1}^{mu} R(a_k) = Lambda`: `mu = -1/2 +- i lambda/2` (parabolic),
/// `mu = -1/2 +- i s/2 +- i r/2` (Morse), and the paired-operator index
/// `2 nu = -1/2 +- i s/2 -+ i r/2` (Eckart).
///
/// The defining sum is re-verified internally; Morse and Eckart require E > 0.
pub fn mu_for_energy(spec: &BarrierSpec, e: f64, sign: SignChoice) -> Result<Complex64> {
    let sg = sign.signum();
    let mu = match spec.dimensionless(e)? {
        DimensionlessParams::Parabolic { lambda, .. } => Complex64::new(-0.5, sg * lambda / 2.0),
        DimensionlessParams::Morse { s, r, .. } => {
            Complex64::new(-0.5, 0.0) + Complex64::new(0.0, sg * 0.5) * (s + r)
        }
        DimensionlessParams::Eckart { s, r, .. } => {
            Complex64::new(-0.5, 0.0) + Complex64::new(0.0, sg * 0.5) * (s - r)
        }
    };
    let residual = mu_roundtrip_residual(spec, e, mu, sign);
    let scale = lambda_constant(spec, e, sign).norm().max(spec.v0());
    if residual > 1e-12 * scale {
        return Err(Error::PropertyViolation(format!(
            "continued remainder sum does not reproduce Lambda: residual {residual:e}"
        )));
    }
    Ok(mu)
}

/// `|remainder_sum(mu) - Lambda|` for a candidate index.
pub fn mu_roundtrip_residual(spec: &BarrierSpec, e: f64, mu: Complex64, sign: SignChoice) -> f64 {
    (remainder_sum(spec, mu, sign) - lambda_constant(spec, e, sign)).norm()
}
