//! Asymptotic wavefunction components and the coefficient matrices A(+-inf).
//!
//! Far from the barrier every solution is a combination of two basis
//! functions `f_{1,2} = e^{+-i chi(x)} / sqrt(q(x))` with `chi = int q`:
//! plane waves where the potential flattens to zero, locally adapted
//! oscillatory functions where it dives to minus infinity. A chosen pair of
//! global solutions `Psi_1, Psi_2` then defines the coefficient matrix at
//! each end, `Psi_j = A_1j f_1 + A_2j f_2`, and the evolution matrix
//! `F = A(-inf) A(+inf)^{-1}` connects the two ends.
//!
//! Entries are stored in log space. For the Eckart family the constants stay
//! meaningful below threshold (strength parameter s imaginary) by carrying,
//! alongside each entry, the analytic continuation of its complex conjugate;
//! for real parameters the pair is an exact conjugate pair.

use crate::barriers::{BarrierShape, BarrierSpec, DimensionlessParams, SignChoice};
use crate::error::Result;
use crate::numerics::{log_gamma, LogComplex};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

/// Which asymptotic end of the axis a quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    MinusInfinity,
    PlusInfinity,
}

/// The per-barrier identification of the asymptotic basis pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisDescriptor {
    /// `f_{forward,backward} = e^{+- i k x} / sqrt(k)`
    PlaneWave { k: f64 },
    /// Morse well side: `f = exp(-+ i (s/2) e^{x/b}) / sqrt(e^{x/b})`
    WkbMorse { s: f64, b: f64 },
    /// Parabolic: `f = e^{-+ i rho^2} / sqrt(rho)`, `rho = sqrt(m Omega / 2 hbar) x`,
    /// with the `|rho|^{+- i lambda/2}` factor carried by the matrix entries.
    WkbParabolic { rho_scale: f64 },
}

/// Basis functions on one side, with the local wavenumber and the
/// forward/backward members of the pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisFunctions {
    pub side: Side,
    pub descriptor: BasisDescriptor,
}

impl BasisFunctions {
    /// Local wavenumber entering the 1/sqrt(q) flux normalization.
    pub fn q(&self, x: f64) -> f64 {
        match self.descriptor {
            BasisDescriptor::PlaneWave { k } => k,
            BasisDescriptor::WkbMorse { s, b } => s / (2.0 * b) * (x / b).exp(),
            BasisDescriptor::WkbParabolic { rho_scale } => {
                2.0 * rho_scale * rho_scale * x.abs()
            }
        }
    }

    /// The basis member with phase increasing toward larger chi.
    pub fn f_forward(&self, x: f64) -> Complex64 {
        match self.descriptor {
            BasisDescriptor::PlaneWave { k } => {
                Complex64::from_polar(1.0 / k.sqrt(), k * x)
            }
            BasisDescriptor::WkbMorse { s, b } => {
                let u = (x / b).exp();
                Complex64::from_polar(1.0 / u.sqrt(), s / 2.0 * u)
            }
            BasisDescriptor::WkbParabolic { rho_scale } => {
                let rho = rho_scale * x;
                Complex64::from_polar(1.0 / rho.abs().sqrt(), rho * rho)
            }
        }
    }

    /// The conjugate member.
    pub fn f_backward(&self, x: f64) -> Complex64 {
        self.f_forward(x).conj()
    }
}

/// Coefficients of the two ladder-constructed solution components in the
/// side's basis, with unit normalization constants.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticComponents {
    pub psi_minus_coeff: LogComplex,
    pub psi_plus_coeff: LogComplex,
    pub basis: BasisFunctions,
}

/// A 2x2 asymptotic coefficient matrix in log space.
///
/// `entry(i, j)` is the constant part of `A_ij` (1-indexed). Any x-dependent
/// unit-modulus factor is factored out: row 1 carries
/// `|rho|^{+carried_phase_exponent}` and row 2 `|rho|^{-carried_phase_exponent}`
/// (zero except for the parabolic family). `tilde(i, j)` is the analytic
/// continuation of `conj(A_ij)` in the barrier parameters; for real
/// parameters it equals `entry(i, j).conj()` exactly.
#[derive(Clone, Copy, Debug)]
pub struct CoefficientMatrix {
    entries: [[LogComplex; 2]; 2],
    tilde: [[LogComplex; 2]; 2],
    pub carried_phase_exponent: Complex64,
}

impl CoefficientMatrix {
    fn conjugate_pair(entries: [[LogComplex; 2]; 2], carried: Complex64) -> Self {
        let tilde = [
            [entries[0][0].conj(), entries[0][1].conj()],
            [entries[1][0].conj(), entries[1][1].conj()],
        ];
        CoefficientMatrix {
            entries,
            tilde,
            carried_phase_exponent: carried,
        }
    }

    /// Constant part of `A_ij`, 1-indexed.
    pub fn entry(&self, i: usize, j: usize) -> LogComplex {
        self.entries[i - 1][j - 1]
    }

    /// Continued conjugate of `A_ij`, 1-indexed.
    pub fn tilde_entry(&self, i: usize, j: usize) -> LogComplex {
        self.tilde[i - 1][j - 1]
    }

    /// det A in log space (the carried row phases cancel between the two
    /// products).
    pub fn det(&self) -> LogComplex {
        self.entries[0][0]
            .mul(self.entries[1][1])
            .sub(self.entries[0][1].mul(self.entries[1][0]))
    }

    pub fn det_tilde(&self) -> LogComplex {
        self.tilde[0][0]
            .mul(self.tilde[1][1])
            .sub(self.tilde[0][1].mul(self.tilde[1][0]))
    }

    /// |det| relative to the largest entry product, as an invertibility gauge.
    pub fn det_margin(&self) -> f64 {
        let scale = self.entries[0][0].log_mod + self.entries[1][1].log_mod;
        let scale = scale.max(self.entries[0][1].log_mod + self.entries[1][0].log_mod);
        (self.det().log_mod - scale).exp()
    }
}

/// Variant selection for the Morse A(-inf) matrix.
///
/// `Consistent` (the default everywhere) is the matrix `F A(+inf)` implied by
/// the evolution matrix and A(+inf); it satisfies `det A = 2i` and reproduces
/// the closed-form coefficients through the F-matrix route. `AsPrinted` is
/// the literal transcription, which differs in the gamma prefactors of the
/// off-diagonal entries and in the denominators of `A_22`; it is kept for the
/// discrepancy report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MorseAMinusForm {
    #[default]
    Consistent,
    AsPrinted,
}

/// `cosh t + i sign sinh t` in log space, overflow-free for large |Re t|.
fn log_cosh_plus_i_sinh(t: Complex64, sign: f64) -> LogComplex {
    // cosh t + i sinh t = e^{t} (1+i)/2 + e^{-t} (1-i)/2
    let (lead, lead_coeff, tail_coeff) = if t.re >= 0.0 {
        (
            t,
            Complex64::new(0.5, 0.5 * sign),
            Complex64::new(0.5, -0.5 * sign),
        )
    } else {
        (
            -t,
            Complex64::new(0.5, -0.5 * sign),
            Complex64::new(0.5, 0.5 * sign),
        )
    };
    let rest = lead_coeff + tail_coeff * (-2.0 * lead).exp();
    LogComplex::from_exponent(lead).mul(LogComplex::from_complex(rest))
}

fn lg(z: Complex64) -> Result<LogComplex> {
    Ok(LogComplex::from_exponent(log_gamma(z)?))
}

/// The four Eckart constants: `(C1, C2, C1~, C2~)` where the tilde pair is
/// the analytic continuation of the conjugates (exact conjugates for real s).
fn eckart_constants(
    s: Complex64,
    r: f64,
    sign: SignChoice,
) -> Result<(LogComplex, LogComplex, LogComplex, LogComplex)> {
    let sg = sign.signum();
    let i = Complex64::new(0.0, 1.0);
    let quarter = Complex64::new(0.25, 0.0);
    let three_quarter = Complex64::new(0.75, 0.0);
    let ir2 = i * (r / 2.0);
    let is4 = i * s * (sg / 4.0);
    let ir4 = i * (r / 4.0);
    let t = (Complex64::new(r, 0.0) + sg * s) * (PI / 4.0);

    let sqrt2pi = LogComplex::new(0.5 * LN_2 + PI.ln(), 0.0);
    let c1 = sqrt2pi
        .div(log_cosh_plus_i_sinh(t, 1.0))
        .div(lg(Complex64::new(1.0, 0.0) + ir2)?)
        .div(lg(quarter + is4 - ir4)?)
        .div(lg(quarter - is4 - ir4)?);
    let c2 = sqrt2pi
        .mul(lg(ir2)?)
        .div(log_cosh_plus_i_sinh(t, -1.0))
        .div(lg(three_quarter - is4 + ir4)?)
        .div(lg(three_quarter + is4 + ir4)?);
    let c1t = sqrt2pi
        .div(log_cosh_plus_i_sinh(t, -1.0))
        .div(lg(Complex64::new(1.0, 0.0) - ir2)?)
        .div(lg(quarter - is4 + ir4)?)
        .div(lg(quarter + is4 + ir4)?);
    let c2t = sqrt2pi
        .mul(lg(-ir2)?)
        .div(log_cosh_plus_i_sinh(t, 1.0))
        .div(lg(three_quarter + is4 - ir4)?)
        .div(lg(three_quarter - is4 - ir4)?);
    Ok((c1, c2, c1t, c2t))
}

/// The Eckart evolution-matrix constants built directly from the C pair:
/// `g = (C1 C2 - C1~ C2~) / (C1 C2 + C1~ C2~)` and
/// `h = 2 C1 C2~ / (C1 C2 + C1~ C2~)`, with the denominator extracted as
/// `2 Re(C1 C2)` for real parameters so no cancelling sum is formed.
pub(crate) fn eckart_gh_constants(
    s: Complex64,
    r: f64,
    sign: SignChoice,
) -> Result<(LogComplex, LogComplex)> {
    let (c1, c2, c1t, c2t) = eckart_constants(s, r, sign)?;
    let p = c1.mul(c2);
    let pt = c1t.mul(c2t);
    let den = if s.im == 0.0 { p.plus_conj() } else { p.add(pt) };
    let g = p.sub(pt).div(den);
    let h = c1.mul(c2t).mul(LogComplex::from_real(2.0)).div(den);
    Ok((g, h))
}

/// Components of the two exact solution branches in the side's basis, with
/// beta = gamma = 1.
pub fn asymptotic_components(
    spec: &BarrierSpec,
    e: f64,
    sign: SignChoice,
    side: Side,
) -> Result<AsymptoticComponents> {
    let sg = sign.signum();
    match spec.dimensionless(e)? {
        DimensionlessParams::Parabolic { lambda, .. } => {
            let rho_scale =
                (spec.units.mass * parabolic_omega(spec) / (2.0 * spec.units.hbar)).sqrt();
            let basis = BasisFunctions {
                side,
                descriptor: BasisDescriptor::WkbParabolic { rho_scale },
            };
            // (+-i)^mu on the principal branch, with the extra
            // e^{-+ pi lambda / 2} branch factor at -inf.
            let branch = match side {
                Side::PlusInfinity => 0.0,
                Side::MinusInfinity => -0.5 * PI * lambda,
            };
            let psi_minus = LogComplex::new(-FRAC_PI_4 * lambda + branch, -sg * FRAC_PI_4);
            let psi_plus = LogComplex::new(FRAC_PI_4 * lambda - branch, -sg * FRAC_PI_4);
            Ok(AsymptoticComponents {
                psi_minus_coeff: psi_minus,
                psi_plus_coeff: psi_plus,
                basis,
            })
        }
        DimensionlessParams::Morse { s, r, k, .. } => {
            let b = morse_b(spec);
            match side {
                Side::PlusInfinity => {
                    // e^{-+ i pi/4} e^{-+ pi (s +- r)/4} on the well-side basis
                    let psi_minus = LogComplex::new(-PI / 4.0 * (s + sg * r), -sg * FRAC_PI_4);
                    let psi_plus = LogComplex::new(PI / 4.0 * (s + sg * r), -sg * FRAC_PI_4);
                    Ok(AsymptoticComponents {
                        psi_minus_coeff: psi_minus,
                        psi_plus_coeff: psi_plus,
                        basis: BasisFunctions {
                            side,
                            descriptor: BasisDescriptor::WkbMorse { s, b },
                        },
                    })
                }
                Side::MinusInfinity => {
                    // sqrt(r) Gamma(+-ir) / Gamma(1/2 +- is/2 +- ir/2) on e^{-+ikx}
                    let ir = Complex64::new(0.0, sg * r);
                    let ghalf = lg(Complex64::new(0.5, sg * (s + r) / 2.0))?;
                    let ratio = lg(ir)?.div(ghalf).mul(LogComplex::from_real(r.sqrt()));
                    Ok(AsymptoticComponents {
                        psi_minus_coeff: ratio,
                        psi_plus_coeff: ratio.recip(),
                        basis: BasisFunctions {
                            side,
                            descriptor: BasisDescriptor::PlaneWave { k },
                        },
                    })
                }
            }
        }
        DimensionlessParams::Eckart { s, r, k, .. } => {
            // Gamma(3/4 +- is/4 +- ir/4) / [Gamma(1 +- ir/2) Gamma(1/4 +- is/4 -+ ir/4)]
            let i = Complex64::new(0.0, 1.0);
            let num = lg(Complex64::new(0.75, 0.0) + i * s * (sg / 4.0) + i * (sg * r / 4.0))?;
            let den = lg(Complex64::new(1.0, sg * r / 2.0))?
                .mul(lg(Complex64::new(0.25, 0.0) + i * s * (sg / 4.0) - i * (sg * r / 4.0))?);
            let psi_minus = num.div(den);
            let psi_plus = lg(Complex64::new(0.0, sg * r / 2.0))?
                .mul(lg(Complex64::new(0.25, 0.0) + i * s * (sg / 4.0) - i * (sg * r / 4.0))?)
                .div(num);
            Ok(AsymptoticComponents {
                psi_minus_coeff: psi_minus,
                psi_plus_coeff: psi_plus,
                basis: BasisFunctions {
                    side,
                    descriptor: BasisDescriptor::PlaneWave { k },
                },
            })
        }
    }
}

fn parabolic_omega(spec: &BarrierSpec) -> f64 {
    match spec.shape {
        BarrierShape::Parabolic { omega, .. } => omega,
        _ => unreachable!("parabolic parameter on non-parabolic barrier"),
    }
}

fn morse_b(spec: &BarrierSpec) -> f64 {
    match spec.shape {
        BarrierShape::Morse { b, .. } | BarrierShape::Eckart { b, .. } => b,
        _ => unreachable!("range parameter on parabolic barrier"),
    }
}

/// The asymptotic coefficient matrix at `side`, in the fixed convention
/// (upper branch, consistent Morse form, branch integers zero).
pub fn a_matrix(spec: &BarrierSpec, e: f64, side: Side) -> Result<CoefficientMatrix> {
    a_matrix_with(spec, e, side, SignChoice::Upper, MorseAMinusForm::Consistent)
}

/// [`a_matrix`] with explicit branch and Morse-variant selection.
pub fn a_matrix_with(
    spec: &BarrierSpec,
    e: f64,
    side: Side,
    sign: SignChoice,
    morse_form: MorseAMinusForm,
) -> Result<CoefficientMatrix> {
    match spec.dimensionless(e)? {
        DimensionlessParams::Parabolic { lambda, .. } => {
            Ok(parabolic_a_matrix(lambda, side, sign))
        }
        DimensionlessParams::Morse { s, r, .. } => morse_a_matrix(s, r, side, sign, morse_form),
        DimensionlessParams::Eckart { s, r, .. } => eckart_a_matrix(s, r, side, sign),
    }
}

fn parabolic_a_matrix(lambda: f64, side: Side, sign: SignChoice) -> CoefficientMatrix {
    let u = PI * lambda / 4.0; // log of e^{pi lambda / 4}
    let p = FRAC_PI_4; // phase pi/4
    let entries = match side {
        Side::PlusInfinity => [
            [LogComplex::new(-u, p), LogComplex::new(-3.0 * u, -p)],
            [LogComplex::new(-u, -p), LogComplex::new(-3.0 * u, p)],
        ],
        Side::MinusInfinity => {
            // (e^{3 i pi/4} + e^{i pi/4}) = sqrt(2) e^{i pi/2}
            let s2 = |log_mod: f64| LogComplex::new(0.5 * LN_2 + log_mod, FRAC_PI_2);
            [
                [
                    s2(u).add(LogComplex::new(-u, -p)),
                    s2(-u).add(LogComplex::new(-3.0 * u, p)),
                ],
                [
                    s2(u).sub(LogComplex::new(-u, p)),
                    s2(-u).sub(LogComplex::new(-3.0 * u, -p)),
                ],
            ]
        }
    };
    let entries = match sign {
        SignChoice::Upper => entries,
        // The lower branch relabels f1 <-> f2: rows swap and entries conjugate.
        SignChoice::Lower => [
            [entries[1][0].conj(), entries[1][1].conj()],
            [entries[0][0].conj(), entries[0][1].conj()],
        ],
    };
    let carried = Complex64::new(0.0, sign.signum() * lambda / 2.0);
    CoefficientMatrix::conjugate_pair(entries, carried)
}

fn morse_a_matrix(
    s: f64,
    r: f64,
    side: Side,
    sign: SignChoice,
    form: MorseAMinusForm,
) -> Result<CoefficientMatrix> {
    let p = FRAC_PI_4;
    let entries = match side {
        Side::PlusInfinity => [
            [
                LogComplex::new(-PI / 4.0 * (s + r), p),
                LogComplex::new(-PI / 4.0 * (s - r), -p),
            ],
            [
                LogComplex::new(PI / 4.0 * (s - r), -p),
                LogComplex::new(PI / 4.0 * (s + r), p),
            ],
        ],
        Side::MinusInfinity => {
            let i = Complex64::new(0.0, 1.0);
            let g1 = lg(Complex64::new(0.5, (s + r) / 2.0))?; // Gamma(1/2 + is/2 + ir/2)
            let g2 = lg(Complex64::new(0.5, (s - r) / 2.0))?; // Gamma(1/2 + is/2 - ir/2)
            let gir = lg(i * r)?;
            let sqrt_r = LogComplex::from_real(r.sqrt());
            let e34 = |log_mod: f64| LogComplex::new(log_mod, 3.0 * p);
            let e14 = |log_mod: f64| LogComplex::new(log_mod, p);

            let a11 = e34(-PI * r / 2.0)
                .div(g1)
                .add(e14(PI * s / 2.0).div(g2))
                .mul(sqrt_r)
                .mul(gir);
            let a12 = e14(0.0)
                .div(g1)
                .add(e34(PI * (s + r) / 2.0).div(g2))
                .mul(sqrt_r);
            let a21 = e14(PI * (s - r) / 2.0)
                .div(g1.conj())
                .add(e34(0.0).div(g2.conj()))
                .mul(sqrt_r);
            let a22 = match form {
                MorseAMinusForm::Consistent => e14(PI * r / 2.0)
                    .div(g2.conj())
                    .add(e34(PI * s / 2.0).div(g1.conj())),
                MorseAMinusForm::AsPrinted => e14(PI * r / 2.0)
                    .div(g1.conj())
                    .add(e34(PI * s / 2.0).div(g1.conj())),
            }
            .mul(sqrt_r)
            .mul(gir.conj());
            match form {
                MorseAMinusForm::Consistent => [[a11, a12.mul(gir)], [a21.mul(gir.conj()), a22]],
                MorseAMinusForm::AsPrinted => [[a11, a12.mul(gir.conj())], [a21.mul(gir), a22]],
            }
        }
    };
    let entries = match sign {
        SignChoice::Upper => entries,
        SignChoice::Lower => [
            [entries[1][0].conj(), entries[1][1].conj()],
            [entries[0][0].conj(), entries[0][1].conj()],
        ],
    };
    Ok(CoefficientMatrix::conjugate_pair(
        entries,
        Complex64::new(0.0, 0.0),
    ))
}

fn eckart_a_matrix(
    s: Complex64,
    r: f64,
    side: Side,
    sign: SignChoice,
) -> Result<CoefficientMatrix> {
    let (c1, c2, c1t, c2t) = eckart_constants(s, r, sign)?;
    let (entries, tilde) = match side {
        Side::PlusInfinity => (
            [[c1, c2t], [c1t, c2.neg()]],
            [[c1t, c2], [c1, c2t.neg()]],
        ),
        Side::MinusInfinity => (
            [[c1, c2t.neg()], [c1t.neg(), c2.neg()]],
            [[c1t, c2.neg()], [c1.neg(), c2t.neg()]],
        ),
    };
    Ok(CoefficientMatrix {
        entries,
        tilde,
        carried_phase_exponent: Complex64::new(0.0, 0.0),
    })
}

/// Relative differences between the as-printed Morse A(-inf) entries and the
/// consistent form, for the verification report.
pub fn morse_a_minus_discrepancy(spec: &BarrierSpec, e: f64) -> Result<[[f64; 2]; 2]> {
    let consistent = a_matrix_with(
        spec,
        e,
        Side::MinusInfinity,
        SignChoice::Upper,
        MorseAMinusForm::Consistent,
    )?;
    let printed = a_matrix_with(
        spec,
        e,
        Side::MinusInfinity,
        SignChoice::Upper,
        MorseAMinusForm::AsPrinted,
    )?;
    let mut out = [[0.0; 2]; 2];
    for i in 1..=2 {
        for j in 1..=2 {
            let a = consistent.entry(i, j);
            let b = printed.entry(i, j);
            out[i - 1][j - 1] =
                b.sub(a).to_complex().norm() / a.to_complex().norm().max(f64::MIN_POSITIVE);
        }
    }
    Ok(out)
}
