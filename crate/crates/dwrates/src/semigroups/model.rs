//! Catalog construction: Koenigs chains, domains, petals, classification.

use super::chain::{KoenigsChain, Prim, SqrtBranch};
use super::domain::Geometry;
use super::SgError;
use crate::geom::{check_finite, Cx, MoebiusMap, SLIT_MARGIN};
use std::f64::consts::{FRAC_PI_2, PI};

/// Catalog entry kinds. Group kinds are honest groups (`phi_t` invertible
/// for all `t`); the remaining kinds are proper semigroups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    HyperbolicGroup { lambda: f64 },
    ParabolicGroup,
    Koebe,
    Sector { theta: f64 },
    SlitHalfplane,
    SlitStrip,
    EllipticExplicit { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Elliptic,
    Hyperbolic,
    ParabolicPositive,
    ParabolicZero,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Elliptic => "elliptic",
            Classification::Hyperbolic => "hyperbolic",
            Classification::ParabolicPositive => "parabolic-positive",
            Classification::ParabolicZero => "parabolic-zero",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PetalType {
    Hyperbolic,
    Parabolic,
}

/// Petal metadata in catalog `h`-coordinates: the landing point `sigma`, the
/// repelling spectral value `nu` (hyperbolic petals only), and the boundary
/// level `alpha` of the petal image (half-plane `{Im > alpha}` or
/// `{Im < alpha}` for parabolic petals, strip `{alpha < Im < alpha - pi/nu}`
/// for hyperbolic ones).
#[derive(Debug, Clone, PartialEq)]
pub struct Petal {
    pub ptype: PetalType,
    pub sigma: Cx,
    pub nu: Option<f64>,
    pub alpha: f64,
    pub image: &'static str,
}

impl Petal {
    fn hyperbolic(sigma: Cx, nu: f64, alpha: f64, image: &'static str) -> Self {
        Self {
            ptype: PetalType::Hyperbolic,
            sigma,
            nu: Some(nu),
            alpha,
            image,
        }
    }

    fn parabolic(sigma: Cx, alpha: f64, image: &'static str) -> Self {
        Self {
            ptype: PetalType::Parabolic,
            sigma,
            nu: None,
            alpha,
            image,
        }
    }
}

/// A fully populated catalog semigroup.
#[derive(Debug, Clone)]
pub struct SemigroupModel {
    kind: Kind,
    tau: Cx,
    spectral: Cx,
    classification: Classification,
    geometry: Geometry,
    petals: Vec<Petal>,
    shift: Cx,
    chain: KoenigsChain,
    h0: Cx,
    dh0: Cx,
}

fn fmt_param(x: f64) -> String {
    format!("{x}")
}

impl SemigroupModel {
    pub fn new(kind: Kind) -> Result<Self, SgError> {
        let cayley = Prim::Mobius(MoebiusMap::cayley());
        let i = Cx::new(0.0, 1.0);
        let (chain, geometry, tau, spectral, petals) = match kind {
            Kind::HyperbolicGroup { lambda } => {
                if !(lambda > 0.0) || !lambda.is_finite() {
                    return Err(SgError::Param(format!("lambda must be positive, got {lambda}")));
                }
                let chain = KoenigsChain::new(vec![
                    cayley,
                    Prim::LogP,
                    Prim::AddC(i * FRAC_PI_2),
                    Prim::MulC(Cx::new(1.0 / lambda, 0.0)),
                ]);
                let petals = vec![Petal::hyperbolic(
                    -Cx::new(1.0, 0.0),
                    -lambda,
                    0.0,
                    "the whole strip (petal = whole disk)",
                )];
                (
                    chain,
                    Geometry::Strip { width: PI / lambda },
                    Cx::new(1.0, 0.0),
                    Cx::new(lambda, 0.0),
                    petals,
                )
            }
            Kind::ParabolicGroup => {
                let chain = KoenigsChain::new(vec![cayley, Prim::MulC(i)]);
                let petals = vec![Petal::parabolic(
                    Cx::new(1.0, 0.0),
                    0.0,
                    "the whole upper half-plane (petal = whole disk)",
                )];
                (
                    chain,
                    Geometry::UpperHalfPlane,
                    Cx::new(1.0, 0.0),
                    Cx::new(0.0, 0.0),
                    petals,
                )
            }
            Kind::Koebe => {
                let chain = KoenigsChain::new(vec![cayley, Prim::Square(SqrtBranch::RightHalf)]);
                let petals = vec![
                    Petal::parabolic(Cx::new(1.0, 0.0), 0.0, "upper half-plane"),
                    Petal::parabolic(Cx::new(1.0, 0.0), 0.0, "lower half-plane"),
                ];
                (
                    chain,
                    Geometry::SlitPlane { end: 0.0 },
                    Cx::new(1.0, 0.0),
                    Cx::new(0.0, 0.0),
                    petals,
                )
            }
            Kind::Sector { theta } => {
                if !(theta > 0.0 && theta < PI) {
                    return Err(SgError::Param(format!(
                        "theta must lie in (0, pi), got {theta}"
                    )));
                }
                let beta = (PI + theta) / PI;
                let chain = KoenigsChain::new(vec![
                    cayley,
                    Prim::MulC(i),
                    Prim::PowSector { beta },
                    Prim::MulC(Cx::from_polar(1.0, -theta)),
                ]);
                let petals = vec![Petal::parabolic(Cx::new(1.0, 0.0), 0.0, "upper half-plane")];
                (
                    chain,
                    Geometry::Sector { theta },
                    Cx::new(1.0, 0.0),
                    Cx::new(0.0, 0.0),
                    petals,
                )
            }
            Kind::SlitHalfplane => {
                let chain = KoenigsChain::new(vec![
                    cayley,
                    Prim::MulC(i),
                    Prim::Square(SqrtBranch::UpperHalf),
                    Prim::AddC(Cx::new(-1.0, 0.0)),
                    Prim::SqrtTo(SqrtBranch::UpperHalf),
                ]);
                let petals = vec![Petal::parabolic(
                    Cx::new(1.0, 0.0),
                    1.0,
                    "half-plane Im w > 1",
                )];
                (
                    chain,
                    Geometry::SlitHalfplane,
                    Cx::new(1.0, 0.0),
                    Cx::new(0.0, 0.0),
                    petals,
                )
            }
            Kind::SlitStrip => {
                let chain = KoenigsChain::new(vec![
                    cayley,
                    Prim::MulC(i),
                    Prim::Square(SqrtBranch::UpperHalf),
                    Prim::AddC(Cx::new(-1.0, 0.0)),
                    Prim::SqrtTo(SqrtBranch::UpperHalf),
                    Prim::LogP,
                ]);
                let petals = vec![
                    Petal::hyperbolic(Cx::new(0.0, -1.0), -2.0, 0.0, "strip 0 < Im w < pi/2"),
                    Petal::hyperbolic(
                        Cx::new(0.0, 1.0),
                        -2.0,
                        FRAC_PI_2,
                        "strip pi/2 < Im w < pi",
                    ),
                ];
                (
                    chain,
                    Geometry::SlitStrip,
                    Cx::new(1.0, 0.0),
                    Cx::new(1.0, 0.0),
                    petals,
                )
            }
            Kind::EllipticExplicit { lambda } => {
                if !(lambda > 0.0) || !lambda.is_finite() {
                    return Err(SgError::Param(format!("lambda must be positive, got {lambda}")));
                }
                let chain = KoenigsChain::new(vec![
                    cayley,
                    Prim::Square(SqrtBranch::RightHalf),
                    Prim::AddC(Cx::new(-1.0, 0.0)),
                ]);
                // The backward-invariant petal is the disk minus the radial
                // slit (-1, 0]; through the exp/Cayley lift it maps onto the
                // comb strip {-pi/lambda < Im < pi/lambda} of width
                // 2 pi / lambda, so the repelling spectral value at sigma = 1
                // is nu = -lambda/2 (phi_t'(1) = e^{lambda t / 2}).
                let petals = vec![Petal::hyperbolic(
                    Cx::new(1.0, 0.0),
                    -lambda / 2.0,
                    -PI / lambda,
                    "disk minus the slit (-1, 0]; lifted comb strip |Im| < pi/lambda",
                )];
                (
                    chain,
                    Geometry::SlitPlane { end: -1.0 },
                    Cx::new(0.0, 0.0),
                    Cx::new(lambda, 0.0),
                    petals,
                )
            }
        };

        let classification = if tau.norm() < 1.0 {
            Classification::Elliptic
        } else if geometry.minimal_strip_width().is_some() {
            Classification::Hyperbolic
        } else if geometry.in_horizontal_halfplane() {
            Classification::ParabolicPositive
        } else {
            Classification::ParabolicZero
        };

        let (h0, dh0) = chain.eval_d(Cx::new(0.0, 0.0))?;
        let shift = match classification {
            Classification::Elliptic => Cx::new(0.0, 0.0),
            Classification::ParabolicZero => h0,
            _ => Cx::new(h0.re, 0.0),
        };

        Ok(Self {
            kind,
            tau,
            spectral,
            classification,
            geometry,
            petals,
            shift,
            chain,
            h0,
            dh0,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Catalog id string, e.g. `hyperbolic-group:lambda=1`.
    pub fn id(&self) -> String {
        match self.kind {
            Kind::HyperbolicGroup { lambda } => {
                format!("hyperbolic-group:lambda={}", fmt_param(lambda))
            }
            Kind::ParabolicGroup => "parabolic-group".into(),
            Kind::Koebe => "koebe".into(),
            Kind::Sector { theta } => format!("sector:theta={}", fmt_param(theta)),
            Kind::SlitHalfplane => "slit-halfplane".into(),
            Kind::SlitStrip => "slit-strip".into(),
            Kind::EllipticExplicit { lambda } => {
                format!("elliptic-explicit:lambda={}", fmt_param(lambda))
            }
        }
    }

    pub fn tau(&self) -> Cx {
        self.tau
    }

    /// Spectral value (`lambda`; zero for parabolic kinds).
    pub fn spectral(&self) -> Cx {
        self.spectral
    }

    pub fn lambda(&self) -> f64 {
        self.spectral.re
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn is_elliptic(&self) -> bool {
        self.classification == Classification::Elliptic
    }

    pub fn domain(&self) -> &Geometry {
        &self.geometry
    }

    pub fn petals(&self) -> &[Petal] {
        &self.petals
    }

    /// Normalization shift: bound evaluators consume `h - shift`, which puts
    /// `h(0)` at 0 (zero hyperbolic step) or `Re h(0)` at 0 (other
    /// non-elliptic kinds); the elliptic entry is already normalized.
    pub fn shift(&self) -> Cx {
        self.shift
    }

    /// Test hook: override the normalization shift. Bound constants change;
    /// measured orbit distances must not.
    #[doc(hidden)]
    pub fn set_shift_unchecked(&mut self, shift: Cx) {
        self.shift = shift;
    }

    pub fn h0(&self) -> Cx {
        self.h0
    }

    pub fn dh0(&self) -> Cx {
        self.dh0
    }

    /// Recomputes the classification from domain containment queries.
    pub fn classify(&self) -> Classification {
        if self.tau.norm() < 1.0 {
            Classification::Elliptic
        } else if self.geometry.minimal_strip_width().is_some() {
            Classification::Hyperbolic
        } else if self.geometry.in_horizontal_halfplane() {
            Classification::ParabolicPositive
        } else {
            Classification::ParabolicZero
        }
    }

    /// Koenigs map `h(z)` (catalog normalization, no shift applied).
    pub fn koenigs(&self, z: Cx) -> Result<Cx, SgError> {
        check_finite(z)?;
        if z.norm() > 1.0 {
            return Err(SgError::Domain(format!("{z} is outside the closed unit disk")));
        }
        self.chain.eval(z)
    }

    /// `(h(z), h'(z))`.
    pub fn koenigs_d(&self, z: Cx) -> Result<(Cx, Cx), SgError> {
        check_finite(z)?;
        if z.norm() > 1.0 {
            return Err(SgError::Domain(format!("{z} is outside the closed unit disk")));
        }
        self.chain.eval_d(z)
    }

    /// Normalized Koenigs value `h(z) - shift`.
    pub fn koenigs_normalized(&self, z: Cx) -> Result<Cx, SgError> {
        Ok(self.koenigs(z)? - self.shift)
    }

    /// Closed-form inverse of the Koenigs map, with a Newton polish when the
    /// branch composition loses accuracy.
    pub fn koenigs_inv(&self, w: Cx) -> Result<Cx, SgError> {
        check_finite(w)?;
        if !self.geometry.contains(w) {
            return Err(SgError::Domain(format!("{w} is outside the Koenigs domain")));
        }
        let z = self.koenigs_inv_unchecked(w)?;
        Ok(self.newton_polish(z, w))
    }

    /// Inverse without the containment check; callers guarantee `w` is an
    /// orbit point of the domain.
    pub(crate) fn koenigs_inv_unchecked(&self, w: Cx) -> Result<Cx, SgError> {
        match self.kind {
            // Cancellation-safe form of (sqrt(w+1)-1)/(sqrt(w+1)+1): exact
            // for tiny |w| (forward orbits near the Denjoy-Wolff point).
            Kind::EllipticExplicit { .. } => {
                let s = sqrt_right(w + 1.0)?;
                let d = s + 1.0;
                Ok(w / (d * d))
            }
            // e^{lambda w} overflows for large Re w; switch to the reciprocal
            // form z = (1 - q)/(1 + q), q = exp(i pi/2 - lambda w).
            Kind::HyperbolicGroup { lambda } if lambda * w.re > 350.0 => {
                let q = (Cx::new(0.0, FRAC_PI_2) - w * lambda).exp();
                Ok((1.0 - q) / (1.0 + q))
            }
            // Same overflow guard for the slit strip:
            // z = (1 - i q k)/(1 + i q k), q = e^{-w}, k = (1+e^{-2w})^{-1/2}.
            Kind::SlitStrip if w.re > 350.0 => {
                let q = (-w).exp();
                let k = (Cx::new(1.0, 0.0) + (w * -2.0).exp()).sqrt();
                let iqk = Cx::new(0.0, 1.0) * q / k;
                Ok((1.0 - iqk) / (1.0 + iqk))
            }
            // The generic chain would have to take sqrt(1 + e^{2w}) right on
            // its cut when e^{2w} is tiny (deep backward points); the root in
            // the upper half-plane is picked by the sign of Im, which the
            // principal root carries for both petal sides.
            Kind::SlitStrip => {
                let p = (w * 2.0).exp();
                let s = (Cx::new(1.0, 0.0) + p).sqrt();
                let u = if s.im < 0.0 { -s } else { s };
                let c = Cx::new(0.0, -1.0) * u;
                Ok((c - 1.0) / (c + 1.0))
            }
            _ => self.chain.eval_inv(w),
        }
    }

    fn newton_polish(&self, z0: Cx, w: Cx) -> Cx {
        let scale = w.norm().max(1.0);
        let mut z = z0;
        let mut best = z0;
        let mut best_res = match self.chain.eval(z0) {
            Ok(h) => (h - w).norm(),
            Err(_) => return z0,
        };
        if best_res <= 1e-10 * scale {
            return z0;
        }
        for _ in 0..5 {
            let Ok((h, dh)) = self.chain.eval_d(z) else { break };
            if dh.norm() == 0.0 {
                break;
            }
            z -= (h - w) / dh;
            if z.norm() >= 1.0 {
                break;
            }
            let Ok(h2) = self.chain.eval(z) else { break };
            let res = (h2 - w).norm();
            if res < best_res {
                best_res = res;
                best = z;
            } else {
                break;
            }
        }
        best
    }

    /// Forward evaluation `phi_t(z)`.
    pub fn phi(&self, z: Cx, t: f64) -> Result<Cx, SgError> {
        if !(t >= 0.0) {
            return Err(SgError::Param(format!("t must be nonnegative, got {t}")));
        }
        if t == 0.0 {
            check_finite(z)?;
            return Ok(z);
        }
        let h = self.koenigs(z)?;
        match self.kind {
            Kind::EllipticExplicit { lambda } => {
                self.koenigs_inv_unchecked(h * (-lambda * t).exp())
            }
            _ => self.koenigs_inv_unchecked(h + t),
        }
    }

    /// Supremum of times for which the backward orbit of `z` stays in the
    /// disk, from the ray-vs-boundary geometry of the Koenigs domain.
    pub fn escape_time(&self, z: Cx) -> Result<f64, SgError> {
        let h = self.koenigs(z)?;
        Ok(match self.kind {
            Kind::HyperbolicGroup { .. } | Kind::ParabolicGroup => f64::INFINITY,
            Kind::Koebe => {
                if h.im.abs() > SLIT_MARGIN {
                    f64::INFINITY
                } else {
                    h.re.max(0.0)
                }
            }
            Kind::Sector { theta } => {
                if h.im > SLIT_MARGIN {
                    f64::INFINITY
                } else {
                    // The ray at height Im h exits through the lower edge.
                    (h.re + h.im / theta.tan()).max(0.0)
                }
            }
            Kind::SlitHalfplane => {
                if h.im > 1.0 || h.re <= 0.0 {
                    f64::INFINITY
                } else {
                    h.re
                }
            }
            Kind::SlitStrip => {
                if (h.im - FRAC_PI_2).abs() > SLIT_MARGIN {
                    f64::INFINITY
                } else {
                    h.re.max(0.0)
                }
            }
            Kind::EllipticExplicit { lambda } => {
                // Multiplicative ray e^{lambda t} h(z) meets (-inf, -1] only
                // when h(z) is negative real.
                if h.im.abs() <= SLIT_MARGIN && h.re < -SLIT_MARGIN {
                    -(-h.re).ln() / lambda
                } else {
                    f64::INFINITY
                }
            }
        })
    }

    /// Backward evaluation `phi_t^{-1}(z)`, defined for `t < escape_time(z)`.
    pub fn backward(&self, z: Cx, t: f64) -> Result<Cx, SgError> {
        if !(t >= 0.0) {
            return Err(SgError::Param(format!("t must be nonnegative, got {t}")));
        }
        let escape = self.escape_time(z)?;
        if t >= escape {
            return Err(SgError::Escape { t, escape });
        }
        if t == 0.0 {
            return Ok(z);
        }
        let h = self.koenigs(z)?;
        match self.kind {
            Kind::EllipticExplicit { lambda } => {
                self.koenigs_inv_unchecked(h * (lambda * t).exp())
            }
            _ => self.koenigs_inv_unchecked(h - t),
        }
    }

    /// Infinitesimal generator `G(z)`: `1/h'(z)` for non-elliptic entries,
    /// `-lambda h(z)/h'(z)` for the elliptic one.
    pub fn generator(&self, z: Cx) -> Result<Cx, SgError> {
        let (h, dh) = self.koenigs_d(z)?;
        match self.kind {
            Kind::EllipticExplicit { lambda } => Ok(-(h * lambda) / dh),
            _ => Ok(1.0 / dh),
        }
    }

    /// Berkson-Porta datum `p(z) = G(z) / ((z - tau)(conj(tau) z - 1))`.
    ///
    /// At an interior Denjoy-Wolff point the quotient is a removable 0/0;
    /// there `G'(tau) = -lambda` gives `p(tau) = lambda / (1 - |tau|^2)`.
    pub fn berkson_p(&self, z: Cx) -> Result<Cx, SgError> {
        let den = (z - self.tau) * (self.tau.conj() * z - 1.0);
        if den.norm() == 0.0 {
            if self.tau.norm() < 1.0 && (z - self.tau).norm() == 0.0 {
                return Ok(self.spectral / (1.0 - self.tau.norm_sqr()));
            }
            return Err(SgError::Domain(format!(
                "Berkson-Porta datum undefined at the fixed point {z}"
            )));
        }
        Ok(self.generator(z)? / den)
    }

    /// The petal containing `z`, resolved from the Koenigs image region.
    pub fn petal_for(&self, z: Cx) -> Result<&Petal, SgError> {
        let h = self.koenigs(z)?;
        let petal = match self.kind {
            Kind::HyperbolicGroup { .. } | Kind::ParabolicGroup => Some(&self.petals[0]),
            Kind::Koebe => {
                if h.im > SLIT_MARGIN {
                    Some(&self.petals[0])
                } else if h.im < -SLIT_MARGIN {
                    Some(&self.petals[1])
                } else {
                    None
                }
            }
            Kind::Sector { .. } => (h.im > SLIT_MARGIN).then(|| &self.petals[0]),
            Kind::SlitHalfplane => (h.im > 1.0 + SLIT_MARGIN).then(|| &self.petals[0]),
            Kind::SlitStrip => {
                if h.im > SLIT_MARGIN && h.im < FRAC_PI_2 - SLIT_MARGIN {
                    Some(&self.petals[0])
                } else if h.im > FRAC_PI_2 + SLIT_MARGIN && h.im < PI - SLIT_MARGIN {
                    Some(&self.petals[1])
                } else {
                    None
                }
            }
            Kind::EllipticExplicit { .. } => {
                let off_slit = h.im.abs() > SLIT_MARGIN || h.re > SLIT_MARGIN;
                (off_slit && h.norm() > SLIT_MARGIN).then(|| &self.petals[0])
            }
        };
        petal.ok_or(SgError::Petal(z))
    }
}

pub(crate) fn sqrt_right(w: Cx) -> Result<Cx, SgError> {
    let dist = if w.re <= 0.0 { w.im.abs() } else { w.norm() };
    if dist <= SLIT_MARGIN {
        return Err(SgError::Branch(format!("sqrt evaluated on its cut at {w}")));
    }
    Ok(w.sqrt())
}

/// Parses a catalog id such as `koebe` or `sector:theta=1.0`.
pub fn parse_id(id: &str) -> Result<Kind, SgError> {
    let (base, param) = match id.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (id, None),
    };
    let value = |expected: &str, default: f64| -> Result<f64, SgError> {
        match param {
            None => Ok(default),
            Some(p) => {
                let (name, v) = p
                    .split_once('=')
                    .ok_or_else(|| SgError::Param(format!("malformed parameter `{p}` in `{id}`")))?;
                if name != expected {
                    return Err(SgError::Param(format!(
                        "unknown parameter `{name}` for `{base}` (expected `{expected}`)"
                    )));
                }
                v.parse::<f64>()
                    .map_err(|_| SgError::Param(format!("cannot parse `{v}` in `{id}`")))
            }
        }
    };
    match base {
        "hyperbolic-group" => Ok(Kind::HyperbolicGroup {
            lambda: value("lambda", 1.0)?,
        }),
        "parabolic-group" => Ok(Kind::ParabolicGroup),
        "koebe" => Ok(Kind::Koebe),
        "sector" => Ok(Kind::Sector {
            theta: value("theta", 1.0)?,
        }),
        "slit-halfplane" => Ok(Kind::SlitHalfplane),
        "slit-strip" => Ok(Kind::SlitStrip),
        "elliptic-explicit" => Ok(Kind::EllipticExplicit {
            lambda: value("lambda", 1.0)?,
        }),
        other => Err(SgError::Param(format!("unknown catalog id `{other}`"))),
    }
}

/// The seven default catalog entries.
pub fn default_catalog() -> Vec<SemigroupModel> {
    [
        Kind::HyperbolicGroup { lambda: 1.0 },
        Kind::ParabolicGroup,
        Kind::Koebe,
        Kind::Sector { theta: 1.0 },
        Kind::SlitHalfplane,
        Kind::SlitStrip,
        Kind::EllipticExplicit { lambda: 1.0 },
    ]
    .into_iter()
    .map(|k| SemigroupModel::new(k).expect("default catalog entries are valid"))
    .collect()
}
