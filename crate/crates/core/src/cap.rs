//! The twelve-point cap built from the four conics through a point of the
//! surface, its coordinate parametrization, and its dual cap of primes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::{Gf3, GfVector};
use crate::pg::{enumerate_hyperplanes, enumerate_points, line_through, Hyperplane, ProjPoint};
use crate::veronese::{dual_veronese_map, primes_meeting_only, sorted, veronese_map, VeroneseModel};

/// The base point `U = F(1,0,0)` of PG(2,3).
pub fn base_preimage() -> ProjPoint {
    ProjPoint::from_ints(&[1, 0, 0]).expect("nonzero")
}

/// `P = F(1,0,0,0,0,0)`, the image of `U`.
pub fn base_point() -> ProjPoint {
    ProjPoint::from_ints(&[1, 0, 0, 0, 0, 0]).expect("nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapOrigin {
    /// Union of internal points of the conics through the base point.
    Theorem1,
    /// Coordinate parametrization, ordered like its domain.
    Psi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapSet {
    pub points: Vec<ProjPoint>,
    pub base_point: ProjPoint,
    pub origin: CapOrigin,
}

impl CapSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sorted_points(&self) -> Vec<ProjPoint> {
        sorted(self.points.iter().cloned())
    }
}

/// Twelve primes: nine osculating primes along conics missing the base
/// point, and the three primes meeting the surface only in the base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCap {
    pub osculating: Vec<Hyperplane>,
    pub isolated: Vec<Hyperplane>,
}

impl DualCap {
    /// All twelve primes, sorted.
    pub fn primes(&self) -> Vec<Hyperplane> {
        let mut all: Vec<Hyperplane> = self.osculating.iter().chain(&self.isolated).cloned().collect();
        all.sort();
        all
    }
}

/// The internal point of the conic through `p` and `y` that lies on the
/// line `py`.
pub fn rho(model: &VeroneseModel, p: &ProjPoint, y: &ProjPoint) -> Result<ProjPoint> {
    model.require_point(p)?;
    model.require_point(y)?;
    if p == y {
        return Err(Error::SamePoint);
    }
    let conic = &model.conics()[model.conic_through_pair(p, y).expect("two surface points share a conic")];
    let internal = conic.partition().internal;
    let line = line_through(p, y)?;
    let hits: Vec<&ProjPoint> = internal.iter().filter(|x| line.contains(x)).collect();
    match hits.as_slice() {
        [x] => Ok((*x).clone()),
        _ => Err(Error::Invariant(format!("bisecant {p}{y} holds {} internal points", hits.len()))),
    }
}

/// `F(x0,x1,x2) ↦ F(x0²+1, x0x1, x0x2, x1², x1x2, x2²)` on PG(2,3) minus `U`.
///
/// The inhomogeneous term is well defined because the only nonzero square
/// in GF(3) is 1.
pub fn psi(x: &ProjPoint) -> Result<ProjPoint> {
    if x.dim() != 2 {
        return Err(Error::Dimension { expected: 2, got: x.dim() });
    }
    if *x == base_preimage() {
        return Err(Error::OutsideDomain(x.to_string()));
    }
    let c = x.coords();
    ProjPoint::new(GfVector::new(vec![
        c[0] * c[0] + Gf3::ONE,
        c[0] * c[1],
        c[0] * c[2],
        c[1] * c[1],
        c[1] * c[2],
        c[2] * c[2],
    ]))
}

/// Points of PG(2,3) other than `U`, in lexicographic order.
pub fn psi_domain() -> Vec<ProjPoint> {
    let u = base_preimage();
    enumerate_points(2).into_iter().filter(|x| *x != u).collect()
}

pub fn build_cap_theorem1(model: &VeroneseModel, p: &ProjPoint) -> Result<CapSet> {
    model.require_point(p)?;
    let points = sorted(model.conics_through(p).into_iter().flat_map(|i| model.conics()[i].partition().internal));
    Ok(CapSet { points, base_point: p.clone(), origin: CapOrigin::Theorem1 })
}

/// The cap at `P = F(1,0,0,0,0,0)` listed as `ψ(x)` over the domain order.
pub fn build_cap_psi() -> CapSet {
    let points = psi_domain().iter().map(|x| psi(x).expect("in domain")).collect();
    CapSet { points, base_point: base_point(), origin: CapOrigin::Psi }
}

/// `(x, ρ(φ(x)))` for every `x` of PG(2,3) other than the preimage of `p`,
/// in lexicographic order of `x`.
pub fn parametrize_cap(model: &VeroneseModel, p: &ProjPoint) -> Result<Vec<(ProjPoint, ProjPoint)>> {
    model.require_point(p)?;
    enumerate_points(2)
        .into_iter()
        .filter(|x| veronese_map(x).map(|y| &y != p).unwrap_or(false))
        .map(|x| {
            let y = veronese_map(&x)?;
            Ok((x, rho(model, p, &y)?))
        })
        .collect()
}

pub fn build_dual_cap(model: &VeroneseModel, p: &ProjPoint) -> Result<DualCap> {
    model.require_point(p)?;
    let mut osculating: Vec<Hyperplane> = model
        .conics()
        .iter()
        .zip(model.osculating_primes())
        .filter(|(c, _)| !c.contains(p))
        .map(|(_, h)| h.clone())
        .collect();
    osculating.sort();
    let isolated = primes_meeting_only(model, p);
    Ok(DualCap { osculating, isolated })
}

/// The nine osculating primes read off directly from the lines with
/// `a0 ≠ 0`.
pub fn osculating_primes_off_base() -> Vec<Hyperplane> {
    let mut out: Vec<Hyperplane> = crate::pg::enumerate_hyperplanes(2)
        .iter()
        .filter(|l| !l.coords()[0].is_zero())
        .map(|l| dual_veronese_map(l).expect("plane line"))
        .collect();
    out.sort();
    out
}

/// True iff no point of the cap lies on a prime of the dual cap.
pub fn disjointness_check(cap: &CapSet, dual: &DualCap) -> bool {
    dual.primes().iter().all(|h| cap.points.iter().all(|x| !h.contains(x)))
}

/// Primes of PG(n,3) containing none of the given points.
pub fn missing_primes(points: &[ProjPoint]) -> Vec<Hyperplane> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    enumerate_hyperplanes(first.dim()).into_iter().filter(|h| points.iter().all(|x| !h.contains(x))).collect()
}

/// `v_u + v_∞ = 2v_{u+1} + 2v_{u+2}` for every `u` and every nonzero
/// `(x1, x2)`.
pub fn vector_identity_check() -> bool {
    let v = |u: Gf3, x1: Gf3, x2: Gf3| GfVector::new(vec![u * u, u * x1, u * x2, x1 * x1, x1 * x2, x2 * x2]);
    let v_inf = GfVector::unit(6, 0);
    let mut ok = true;
    for x1 in Gf3::ALL {
        for x2 in Gf3::ALL {
            if x1.is_zero() && x2.is_zero() {
                continue;
            }
            for u in Gf3::ALL {
                let lhs = &v(u, x1, x2) + &v_inf;
                let rhs = &v(u + Gf3::ONE, x1, x2).scale(Gf3::TWO) + &v(u + Gf3::TWO, x1, x2).scale(Gf3::TWO);
                ok &= lhs == rhs;
            }
        }
    }
    ok
}

/// Every quadratic form on `F^3` takes the same value on `x` and `2x`, and
/// `ψ` gives the same point for both representatives.
pub fn quadratic_scalar_invariance() -> bool {
    let vectors: Vec<GfVector> = GfVector::all(3).collect();
    let forms_ok = GfVector::all(6).all(|coeffs| {
        vectors.iter().all(|x| {
            let q = |y: &GfVector| coeffs.dot(&crate::veronese::monomials(y));
            q(&x.scale(Gf3::TWO)) == q(x)
        })
    });
    let psi_ok = vectors.iter().filter(|x| !x.is_zero()).all(|x| {
        let Ok(p) = ProjPoint::new(x.clone()) else { return false };
        if p == base_preimage() {
            return true;
        }
        let raw = |y: &GfVector| {
            let mut m = crate::veronese::monomials(y).entries().to_vec();
            m[0] += Gf3::ONE;
            GfVector::new(m)
        };
        raw(x) == raw(&x.scale(Gf3::TWO)) && ProjPoint::new(raw(x)).ok() == psi(&p).ok()
    });
    forms_ok && psi_ok
}
