//! Projective spaces PG(n,3): points, hyperplanes, flats and collineations.
//!
//! Points and hyperplanes are stored in canonical form (first nonzero
//! coordinate equal to 1), so equality of values is equality of the
//! projective objects. Collineations act on row vectors, `x ↦ x·M`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::{Gf3, GfMatrix, GfVector};

fn canonical(v: GfVector) -> Result<GfVector> {
    match v.first_nonzero() {
        None => Err(Error::ZeroVector),
        Some((_, Gf3::ONE)) => Ok(v),
        Some((_, lead)) => Ok(v.scale(lead.inv().expect("nonzero"))),
    }
}

fn parse_digits(s: &str, sep: char) -> Result<GfVector> {
    let digits = s
        .trim()
        .split(sep)
        .map(|d| {
            let d = d.trim();
            d.parse::<u8>().map_err(|_| Error::Parse(format!("bad digit {d:?} in {s:?}"))).and_then(Gf3::try_from)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GfVector::new(digits))
}

/// A point of PG(n,3) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProjPoint {
    coords: GfVector,
}

impl ProjPoint {
    pub fn new(coords: GfVector) -> Result<Self> {
        Ok(ProjPoint { coords: canonical(coords)? })
    }

    pub fn from_ints(digits: &[i64]) -> Result<Self> {
        Self::new(GfVector::from_ints(digits))
    }

    /// Parses a point written with an arbitrary single-character separator
    /// (`:` in the canonical text format, `,` for CLI preimages).
    pub fn parse_with(s: &str, sep: char) -> Result<Self> {
        Self::new(parse_digits(s, sep)?)
    }

    pub fn coords(&self) -> &GfVector {
        &self.coords
    }

    /// Projective dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The hyperplane with the same coordinate vector (dual space reading).
    pub fn to_hyperplane(&self) -> Hyperplane {
        Hyperplane { coords: self.coords.clone() }
    }
}

impl FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, ':')
    }
}

impl TryFrom<String> for ProjPoint {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProjPoint> for String {
    fn from(p: ProjPoint) -> String {
        p.to_string()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.coords)
    }
}

/// A hyperplane given by its dual coordinates; `X` lies on it iff `a·x = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Hyperplane {
    coords: GfVector,
}

impl Hyperplane {
    pub fn new(coords: GfVector) -> Result<Self> {
        Ok(Hyperplane { coords: canonical(coords)? })
    }

    pub fn from_ints(digits: &[i64]) -> Result<Self> {
        Self::new(GfVector::from_ints(digits))
    }

    pub fn coords(&self) -> &GfVector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.coords.dot(p.coords()).is_zero()
    }

    /// The point of the dual space with the same coordinates.
    pub fn to_point(&self) -> ProjPoint {
        ProjPoint { coords: self.coords.clone() }
    }

    pub fn to_flat(&self) -> Flat {
        let row = GfMatrix::from_rows(std::slice::from_ref(&self.coords)).expect("one row");
        Flat::from_vectors(self.coords.len(), &row.nullspace())
    }
}

impl FromStr for Hyperplane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_digits(s, ':')?)
    }
}

impl TryFrom<String> for Hyperplane {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Hyperplane> for String {
    fn from(h: Hyperplane) -> String {
        h.to_string()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({})", self.coords)
    }
}

/// Number of points (and of hyperplanes) of PG(n,3).
pub fn point_count(n: usize) -> usize {
    (3usize.pow(n as u32 + 1) - 1) / 2
}

/// All points of PG(n,3) in lexicographic order of their canonical coordinates.
pub fn enumerate_points(n: usize) -> Vec<ProjPoint> {
    GfVector::all(n + 1)
        .filter(|v| matches!(v.first_nonzero(), Some((_, Gf3::ONE))))
        .map(|coords| ProjPoint { coords })
        .collect()
}

pub fn enumerate_hyperplanes(n: usize) -> Vec<Hyperplane> {
    enumerate_points(n).iter().map(ProjPoint::to_hyperplane).collect()
}

/// The four points `{a, b, a+b, a+2b}` of the line `ab`, sorted.
pub fn line_through(a: &ProjPoint, b: &ProjPoint) -> Result<[ProjPoint; 4]> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension { expected: a.dim(), got: b.dim() });
    }
    if a == b {
        return Err(Error::SamePoint);
    }
    let (u, v) = (a.coords(), b.coords());
    let mut pts = [a.clone(), b.clone(), ProjPoint::new(u + v)?, ProjPoint::new(u + &v.scale(Gf3::TWO))?];
    pts.sort();
    Ok(pts)
}

/// Rank of the span of a set of points.
pub fn rank_of(points: &[&ProjPoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows: Vec<GfVector> = points.iter().map(|p| p.coords().clone()).collect();
    GfMatrix::from_rows(&rows).expect("equal lengths").rank()
}

/// A projective subspace, stored as the nonzero rows of an rref basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    ambient: usize,
    basis: GfMatrix,
}

impl Flat {
    /// Span of arbitrary vectors in `F^ambient`.
    pub fn from_vectors(ambient: usize, vectors: &[GfVector]) -> Flat {
        if vectors.is_empty() {
            return Flat { ambient, basis: GfMatrix::zeros(0, ambient) };
        }
        let (r, rank) = GfMatrix::from_rows(vectors).expect("equal lengths").rref();
        let rows: Vec<GfVector> = (0..rank).map(|i| r.row(i)).collect();
        let basis = if rows.is_empty() {
            GfMatrix::zeros(0, ambient)
        } else {
            GfMatrix::from_rows(&rows).expect("equal lengths")
        };
        Flat { ambient, basis }
    }

    pub fn span(points: &[ProjPoint]) -> Result<Flat> {
        let first = points.first().ok_or_else(|| Error::Shape("span of no points".into()))?;
        let ambient = first.coords().len();
        if let Some(p) = points.iter().find(|p| p.coords().len() != ambient) {
            return Err(Error::Dimension { expected: first.dim(), got: p.dim() });
        }
        let vs: Vec<GfVector> = points.iter().map(|p| p.coords().clone()).collect();
        Ok(Flat::from_vectors(ambient, &vs))
    }

    pub fn whole(n: usize) -> Flat {
        Flat { ambient: n + 1, basis: GfMatrix::identity(n + 1) }
    }

    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    /// Projective dimension; the empty flat has dimension -1.
    pub fn dim(&self) -> isize {
        self.basis.rows() as isize - 1
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient - 1
    }

    /// Linear forms vanishing on the flat (a basis of its annihilator).
    pub fn annihilator(&self) -> Vec<GfVector> {
        if self.basis.rows() == 0 {
            return (0..self.ambient).map(|i| GfVector::unit(self.ambient, i)).collect();
        }
        self.basis.nullspace()
    }

    pub fn contains_vector(&self, v: &GfVector) -> bool {
        self.annihilator().iter().all(|a| a.dot(v).is_zero())
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.coords().len() == self.ambient && self.contains_vector(p.coords())
    }

    pub fn is_subflat_of(&self, other: &Flat) -> bool {
        self.basis.row_vectors().iter().all(|v| other.contains_vector(v))
    }

    pub fn meet(&self, other: &Flat) -> Flat {
        let mut constraints = self.annihilator();
        constraints.extend(other.annihilator());
        if constraints.is_empty() {
            return self.clone();
        }
        let m = GfMatrix::from_rows(&constraints).expect("equal lengths");
        Flat::from_vectors(self.ambient, &m.nullspace())
    }

    pub fn join(&self, other: &Flat) -> Flat {
        let mut vs = self.basis.row_vectors();
        vs.extend(other.basis.row_vectors());
        Flat::from_vectors(self.ambient, &vs)
    }

    /// Every point of the flat, sorted.
    pub fn points(&self) -> Vec<ProjPoint> {
        let k = self.rank();
        let rows = self.basis.row_vectors();
        let mut out: Vec<ProjPoint> = GfVector::all(k)
            .filter(|c| matches!(c.first_nonzero(), Some((_, Gf3::ONE))))
            .map(|c| {
                let v = rows.iter().zip(c.iter()).fold(GfVector::zeros(self.ambient), |acc, (r, s)| &acc + &r.scale(s));
                ProjPoint::new(v).expect("independent rows")
            })
            .collect();
        out.sort();
        out
    }

    /// All lines contained in the flat.
    pub fn lines(&self) -> Vec<Flat> {
        let pts = self.points();
        let mut lines = BTreeSet::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                lines.insert(Flat::span(&[a.clone(), b.clone()]).expect("same ambient"));
            }
        }
        lines.into_iter().collect()
    }

    /// The hyperplane equal to this flat, if it has codimension one.
    pub fn as_hyperplane(&self) -> Option<Hyperplane> {
        match self.annihilator().as_slice() {
            [a] => Hyperplane::new(a.clone()).ok(),
            _ => None,
        }
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.row_vectors().iter().map(|r| r.to_string()).collect();
        write!(f, "Flat(dim {}; <{}>)", self.dim(), rows.join(", "))
    }
}

/// An invertible matrix up to scalar, acting by `x ↦ x·M`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collineation {
    matrix: GfMatrix,
}

impl Collineation {
    pub fn new(matrix: GfMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape("collineation matrix must be square".into()));
        }
        if matrix.rank() < matrix.rows() {
            return Err(Error::NotInvertible);
        }
        let lead = matrix.entries().iter().copied().find(|x| !x.is_zero()).expect("invertible");
        let matrix = matrix.scale(lead.inv().expect("nonzero"));
        Ok(Collineation { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Collineation { matrix: GfMatrix::identity(n + 1) }
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.left_mul(x.coords())?)
    }

    pub fn apply_all(&self, xs: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    /// Image of a hyperplane: `a ↦ (M⁻¹·aᵀ)ᵀ`.
    pub fn apply_hyperplane(&self, h: &Hyperplane) -> Result<Hyperplane> {
        Hyperplane::new(self.matrix.mat_inv()?.right_mul(h.coords())?)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Collineation) -> Result<Collineation> {
        Collineation::new(self.matrix.mat_mul(&other.matrix)?)
    }

    pub fn inverse(&self) -> Collineation {
        Collineation::new(self.matrix.mat_inv().expect("invertible")).expect("invertible")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == GfMatrix::identity(self.matrix.rows())
    }
}

impl fmt::Debug for Collineation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Collineation {:?}", self.matrix)
    }
}

/// The perspective collineation with the given centre and axis sending
/// `pair.0` to `pair.1`.
///
/// Every such map has the form `y ↦ y + t·(y·a)·c` with `a` the axis and `c`
/// the centre; over GF(3) the scalar `t` is found by trying all three values.
pub fn perspectivity(centre: &ProjPoint, axis: &Hyperplane, pair: (&ProjPoint, &ProjPoint)) -> Result<Collineation> {
    let (x, image) = pair;
    let n = centre.dim();
    for d in [axis.dim(), x.dim(), image.dim()] {
        if d != n {
            return Err(Error::Dimension { expected: n, got: d });
        }
    }
    if axis.contains(x) {
        return Err(Error::Perspectivity(format!("{x} lies on the axis")));
    }
    if x == centre {
        return Err(Error::Perspectivity("source point equals the centre".into()));
    }
    if rank_of(&[centre, x, image]) > 2 {
        return Err(Error::Perspectivity(format!("{centre}, {x}, {image} are not collinear")));
    }
    let a = axis.coords();
    let c = centre.coords();
    for t in Gf3::ALL {
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            rows.push(&GfVector::unit(n + 1, i) + &c.scale(t * a[i]));
        }
        let m = GfMatrix::from_rows(&rows).expect("square");
        if let Ok(col) = Collineation::new(m) {
            if &col.apply(x)? == image {
                return Ok(col);
            }
        }
    }
    Err(Error::Perspectivity(format!("no perspectivity maps {x} to {image}")))
}
