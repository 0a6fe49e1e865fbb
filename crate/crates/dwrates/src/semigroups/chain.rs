//! Koenigs maps as compositions of branch-checked primitives.
//!
//! Every catalog Koenigs function is stored as a chain of primitives
//! (Möbius, multiply/add by a constant, square, square root with a declared
//! cut, principal log, principal power). Each primitive validates that its
//! input stays clear of its cut by [`SLIT_MARGIN`], which keeps `h`
//! single-valued on the Koenigs domain and makes branch failures diagnosable.

use super::SgError;
use crate::geom::{mobius_apply, Cx, MoebiusMap, SLIT_MARGIN};

/// Branch choice for square roots: which half-plane the root lands in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SqrtBranch {
    /// Principal root into `Re >= 0`; cut along `(-inf, 0]`.
    RightHalf,
    /// Root into `Im >= 0`; cut along `[0, +inf)`.
    UpperHalf,
}

#[derive(Debug, Clone)]
pub enum Prim {
    Mobius(MoebiusMap),
    MulC(Cx),
    AddC(Cx),
    /// `w -> w^2`; the tag records which root inverts it.
    Square(SqrtBranch),
    SqrtTo(SqrtBranch),
    /// Principal logarithm, cut along `(-inf, 0]`.
    LogP,
    /// `w -> w^beta` by the principal branch; the inverse reads the argument
    /// in `(0, beta * pi)`, matching a sector image of that opening.
    PowSector { beta: f64 },
}

fn dist_to_left_ray(w: Cx) -> f64 {
    if w.re <= 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

fn dist_to_right_ray(w: Cx) -> f64 {
    if w.re >= 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

fn check_cut(dist: f64, what: &str, w: Cx) -> Result<(), SgError> {
    if dist <= SLIT_MARGIN {
        Err(SgError::Branch(format!("{what} evaluated within {SLIT_MARGIN} of its cut at {w}")))
    } else {
        Ok(())
    }
}

pub(crate) fn sqrt_branch(w: Cx, branch: SqrtBranch) -> Result<Cx, SgError> {
    match branch {
        SqrtBranch::RightHalf => {
            check_cut(dist_to_left_ray(w), "sqrt (right half-plane branch)", w)?;
            Ok(w.sqrt())
        }
        SqrtBranch::UpperHalf => {
            check_cut(dist_to_right_ray(w), "sqrt (upper half-plane branch)", w)?;
            let s = w.sqrt();
            Ok(if s.im < 0.0 { -s } else { s })
        }
    }
}

impl Prim {
    pub(crate) fn eval(&self, z: Cx) -> Result<Cx, SgError> {
        match self {
            Prim::Mobius(m) => mobius_apply(m, z).map_err(|e| SgError::Branch(e.to_string())),
            Prim::MulC(c) => Ok(c * z),
            Prim::AddC(c) => Ok(c + z),
            Prim::Square(_) => Ok(z * z),
            Prim::SqrtTo(branch) => sqrt_branch(z, *branch),
            Prim::LogP => {
                check_cut(dist_to_left_ray(z), "log", z)?;
                Ok(z.ln())
            }
            Prim::PowSector { beta } => {
                check_cut(dist_to_left_ray(z), "power", z)?;
                Ok((z.ln() * *beta).exp())
            }
        }
    }

    /// Value and derivative of the primitive at `z`.
    pub(crate) fn eval_d(&self, z: Cx) -> Result<(Cx, Cx), SgError> {
        let v = self.eval(z)?;
        let d = match self {
            Prim::Mobius(m) => {
                let den = m.c * z + m.d;
                (m.a * m.d - m.b * m.c) / (den * den)
            }
            Prim::MulC(c) => *c,
            Prim::AddC(_) => Cx::new(1.0, 0.0),
            Prim::Square(_) => 2.0 * z,
            Prim::SqrtTo(_) => 0.5 / v,
            Prim::LogP => 1.0 / z,
            Prim::PowSector { beta } => *beta * v / z,
        };
        Ok((v, d))
    }

    pub(crate) fn eval_inv(&self, w: Cx) -> Result<Cx, SgError> {
        match self {
            Prim::Mobius(m) => {
                mobius_apply(&m.inverse(), w).map_err(|e| SgError::Branch(e.to_string()))
            }
            Prim::MulC(c) => Ok(w / c),
            Prim::AddC(c) => Ok(w - c),
            Prim::Square(branch) => sqrt_branch(w, *branch),
            Prim::SqrtTo(_) => Ok(w * w),
            Prim::LogP => Ok(w.exp()),
            Prim::PowSector { beta } => {
                // Arguments live in (0, beta * pi): lift the principal value.
                let mut a = w.arg();
                if a <= 0.0 {
                    a += std::f64::consts::TAU;
                }
                let max_arg = beta * std::f64::consts::PI;
                let edge = w.norm() * a.min(max_arg - a);
                check_cut(edge, "power inverse", w)?;
                Ok(Cx::new(w.norm().ln() / beta, a / beta).exp())
            }
        }
    }
}

/// A Koenigs map as a primitive composition, innermost first.
#[derive(Debug, Clone)]
pub struct KoenigsChain {
    prims: Vec<Prim>,
}

impl KoenigsChain {
    pub fn new(prims: Vec<Prim>) -> Self {
        Self { prims }
    }

    pub fn eval(&self, z: Cx) -> Result<Cx, SgError> {
        let mut v = z;
        for p in &self.prims {
            v = p.eval(v)?;
        }
        Ok(v)
    }

    /// `(h(z), h'(z))` by the chain rule.
    pub fn eval_d(&self, z: Cx) -> Result<(Cx, Cx), SgError> {
        let mut v = z;
        let mut d = Cx::new(1.0, 0.0);
        for p in &self.prims {
            let (pv, pd) = p.eval_d(v)?;
            v = pv;
            d *= pd;
        }
        Ok((v, d))
    }

    /// Closed-form inverse: primitive inverses applied outermost first.
    pub fn eval_inv(&self, w: Cx) -> Result<Cx, SgError> {
        let mut v = w;
        for p in self.prims.iter().rev() {
            v = p.eval_inv(v)?;
        }
        Ok(v)
    }
}
