//! The Veronese surface of PG(2,3) in PG(5,3).
//!
//! Coordinates of PG(5,3) are indexed by the monomials
//! `(00, 01, 02, 11, 12, 22)` in that order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf3::{Gf3, GfMatrix, GfVector};
use crate::pg::{enumerate_hyperplanes, enumerate_points, rank_of, Collineation, Flat, Hyperplane, ProjPoint};

/// Index pairs of the six quadratic monomials.
pub const MONOMIALS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn monomial_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    MONOMIALS.iter().position(|&m| m == (i, j)).expect("valid pair")
}

fn require_plane(dim: usize) -> Result<()> {
    if dim == 2 {
        Ok(())
    } else {
        Err(Error::Dimension { expected: 2, got: dim })
    }
}

/// The six monomial values of a vector of `F^3`.
pub fn monomials(x: &GfVector) -> GfVector {
    GfVector::new(MONOMIALS.iter().map(|&(i, j)| x[i] * x[j]).collect())
}

pub fn veronese_map(x: &ProjPoint) -> Result<ProjPoint> {
    require_plane(x.dim())?;
    ProjPoint::new(monomials(x.coords()))
}

/// Osculating prime along the image of a line with coordinates `a`.
pub fn dual_veronese_map(line: &Hyperplane) -> Result<Hyperplane> {
    require_plane(line.dim())?;
    let a = line.coords();
    let coeffs = MONOMIALS.iter().map(|&(i, j)| if i == j { a[i] * a[j] } else { Gf3::TWO * a[i] * a[j] }).collect();
    Hyperplane::new(GfVector::new(coeffs))
}

/// Symmetric 3x3 matrix attached to a point of PG(5,3).
pub fn symmetric_matrix(y: &GfVector) -> GfMatrix {
    let mut data = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            data.push(y[monomial_index(i, j)]);
        }
    }
    GfMatrix::new(3, 3, data).expect("3x3")
}

/// Whether the point lies on the cubic hypersurface swept out by the chords
/// (and tangents) of the surface: the symmetric matrix has rank at most two.
pub fn chordal_cubic_contains(x: &ProjPoint) -> bool {
    x.dim() == 5 && symmetric_matrix(x.coords()).det3().expect("3x3").is_zero()
}

/// The collineation of PG(5,3) induced by the plane collineation `x ↦ x·a`.
pub fn lift_collineation(a: &GfMatrix) -> Result<Collineation> {
    if a.shape() != (3, 3) {
        return Err(Error::Shape("lift needs a 3x3 matrix".into()));
    }
    if a.det3()?.is_zero() {
        return Err(Error::NotInvertible);
    }
    // Row (i,l) holds the coefficients of x_i x_l in the monomials of x·a.
    let mut data = Vec::with_capacity(36);
    for &(i, l) in &MONOMIALS {
        for &(j, k) in &MONOMIALS {
            let v =
                if i == l { a.get(i, j) * a.get(i, k) } else { a.get(i, j) * a.get(l, k) + a.get(l, j) * a.get(i, k) };
            data.push(v);
        }
    }
    Collineation::new(GfMatrix::new(6, 6, data)?)
}

/// Points of a conic plane split by their relation to the conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPartition {
    pub on_conic: Vec<ProjPoint>,
    pub internal: Vec<ProjPoint>,
    pub external: Vec<ProjPoint>,
}

/// The image of a line of PG(2,3): four points spanning a plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub preimage_line: Hyperplane,
    pub points: Vec<ProjPoint>,
    pub plane: Flat,
}

impl Conic {
    pub fn from_line(line: &Hyperplane) -> Result<Conic> {
        let pre: Vec<ProjPoint> = enumerate_points(2).into_iter().filter(|x| line.contains(x)).collect();
        let mut points = pre.iter().map(veronese_map).collect::<Result<Vec<_>>>()?;
        points.sort();
        let plane = Flat::span(&points)?;
        Ok(Conic { preimage_line: line.clone(), points, plane })
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// Lines of the conic plane meeting the conic in exactly one point.
    pub fn tangent_lines(&self) -> Vec<Flat> {
        self.plane.lines().into_iter().filter(|l| self.points.iter().filter(|p| l.contains(p)).count() == 1).collect()
    }

    pub fn tangent_at(&self, p: &ProjPoint) -> Option<Flat> {
        if !self.contains(p) {
            return None;
        }
        self.tangent_lines().into_iter().find(|l| l.contains(p))
    }

    pub fn partition(&self) -> ConicPartition {
        classify_conic_plane(self)
    }
}

/// Splits the 13 points of the conic plane: internal points lie on no
/// tangent, external points on two.
pub fn classify_conic_plane(c: &Conic) -> ConicPartition {
    arc_partition(&c.points).expect("conic spans a plane")
}

/// The same split for any four coplanar points, no three collinear.
pub fn arc_partition(points: &[ProjPoint]) -> Result<ConicPartition> {
    let plane = Flat::span(points)?;
    if points.len() != 4 || plane.dim() != 2 || !is_cap(points) {
        return Err(Error::Shape("expected four coplanar points, no three collinear".into()));
    }
    let tangents: Vec<Flat> =
        plane.lines().into_iter().filter(|l| points.iter().filter(|p| l.contains(p)).count() == 1).collect();
    let mut internal = Vec::new();
    let mut external = Vec::new();
    for p in plane.points() {
        if points.contains(&p) {
            continue;
        }
        match tangents.iter().filter(|t| t.contains(&p)).count() {
            0 => internal.push(p),
            _ => external.push(p),
        }
    }
    Ok(ConicPartition { on_conic: sorted(points.iter().cloned()), internal, external })
}

/// The 13 points of the surface with their conics, osculating primes and
/// tangent planes.
#[derive(Clone, Debug)]
pub struct VeroneseModel {
    preimages: Vec<ProjPoint>,
    points: Vec<ProjPoint>,
    conics: Vec<Conic>,
    osculating: Vec<Hyperplane>,
    tangent_planes: Vec<Flat>,
}

impl VeroneseModel {
    pub fn build() -> VeroneseModel {
        let preimages = enumerate_points(2);
        let points: Vec<ProjPoint> = preimages.iter().map(|x| veronese_map(x).expect("plane point")).collect();
        let lines = enumerate_hyperplanes(2);
        let conics: Vec<Conic> = lines.iter().map(|l| Conic::from_line(l).expect("plane line")).collect();
        let osculating: Vec<Hyperplane> = lines.iter().map(|l| dual_veronese_map(l).expect("plane line")).collect();
        let tangent_planes = points
            .iter()
            .map(|p| {
                conics
                    .iter()
                    .zip(&osculating)
                    .filter(|(c, _)| c.contains(p))
                    .map(|(_, h)| h.to_flat())
                    .reduce(|a, b| a.meet(&b))
                    .expect("four conics through each point")
            })
            .collect();
        VeroneseModel { preimages, points, conics, osculating, tangent_planes }
    }

    /// Surface points, ordered like their preimages in PG(2,3).
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn conics(&self) -> &[Conic] {
        &self.conics
    }

    pub fn osculating_primes(&self) -> &[Hyperplane] {
        &self.osculating
    }

    pub fn osculating_prime(&self, conic: usize) -> &Hyperplane {
        &self.osculating[conic]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn require_point(&self, p: &ProjPoint) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::NotOnSurface(p.to_string()))
    }

    pub fn preimage(&self, p: &ProjPoint) -> Option<&ProjPoint> {
        self.index_of(p).map(|i| &self.preimages[i])
    }

    pub fn tangent_plane(&self, p: &ProjPoint) -> Option<&Flat> {
        self.index_of(p).map(|i| &self.tangent_planes[i])
    }

    /// Indices of the conics through `p`.
    pub fn conics_through(&self, p: &ProjPoint) -> Vec<usize> {
        (0..self.conics.len()).filter(|&i| self.conics[i].contains(p)).collect()
    }

    pub fn conic_through_pair(&self, a: &ProjPoint, b: &ProjPoint) -> Option<usize> {
        if a == b {
            return None;
        }
        (0..self.conics.len()).find(|&i| self.conics[i].contains(a) && self.conics[i].contains(b))
    }

    pub fn conic_by_line(&self, line: &Hyperplane) -> Option<usize> {
        self.conics.iter().position(|c| &c.preimage_line == line)
    }

    /// Points of the surface lying on `h`.
    pub fn section(&self, h: &Hyperplane) -> Vec<ProjPoint> {
        self.points.iter().filter(|p| h.contains(p)).cloned().collect()
    }

    /// Span of all tangent lines through `p`, computed from the conics alone.
    pub fn tangent_plane_from_tangents(&self, p: &ProjPoint) -> Option<Flat> {
        self.index_of(p)?;
        self.conics_through(p)
            .into_iter()
            .map(|i| self.conics[i].tangent_at(p).expect("p on conic"))
            .reduce(|a, b| a.join(&b))
    }

    /// Text dump, one conic per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, h) in self.conics.iter().zip(&self.osculating) {
            let pts: Vec<String> = c.points.iter().map(ToString::to_string).collect();
            out.push_str(&format!("line={} points={} prime={}\n", c.preimage_line, pts.join(","), h));
        }
        out
    }
}

/// Whether no three of the points are collinear.
pub fn is_cap(points: &[ProjPoint]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if rank_of(&[&points[i], &points[j], &points[k]]) < 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// The set of hyperplanes `h` with `h ∩ V = {p}`.
pub fn primes_meeting_only(model: &VeroneseModel, p: &ProjPoint) -> Vec<Hyperplane> {
    enumerate_hyperplanes(5).into_iter().filter(|h| model.section(h) == [p.clone()]).collect()
}

/// Sorted, deduplicated copy.
pub(crate) fn sorted(points: impl IntoIterator<Item = ProjPoint>) -> Vec<ProjPoint> {
    points.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn veronese_map_examples() {
        assert_eq!(veronese_map(&pt("1:0:0")).unwrap(), pt("1:0:0:0:0:0"));
        assert_eq!(veronese_map(&pt("0:1:0")).unwrap(), pt("0:0:0:1:0:0"));
        assert_eq!(veronese_map(&pt("1:1:1")).unwrap(), pt("1:1:1:1:1:1"));
        assert!(veronese_map(&pt("1:0:0:0")).is_err());
    }

    #[test]
    fn dual_map_examples() {
        let h = |s: &str| s.parse::<Hyperplane>().unwrap();
        assert_eq!(dual_veronese_map(&h("0:0:1")).unwrap(), h("0:0:0:0:0:1"));
        assert_eq!(dual_veronese_map(&h("1:0:0")).unwrap(), h("1:0:0:0:0:0"));
    }

    #[test]
    fn map_is_injective() {
        let model = VeroneseModel::build();
        assert_eq!(sorted(model.points().iter().cloned()).len(), 13);
    }

    #[test]
    fn osculating_prime_meets_surface_in_its_conic() {
        let model = VeroneseModel::build();
        for (c, h) in model.conics().iter().zip(model.osculating_primes()) {
            assert_eq!(model.section(h), c.points);
        }
    }

    #[test]
    fn incidence_structure_is_a_projective_plane() {
        let model = VeroneseModel::build();
        assert_eq!(model.conics().len(), 13);
        for p in model.points() {
            assert_eq!(model.conics_through(p).len(), 4);
        }
        for c in model.conics() {
            assert_eq!(c.points.len(), 4);
            assert_eq!(c.plane.dim(), 2);
            assert!(is_cap(&c.points));
        }
    }

    #[test]
    fn conic_planes_meet_in_a_surface_point() {
        let model = VeroneseModel::build();
        let cs = model.conics();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let m = cs[i].plane.meet(&cs[j].plane);
                assert_eq!(m.dim(), 0);
                assert!(model.contains(&m.points()[0]));
            }
        }
    }

    #[test]
    fn tangent_planes_meet_off_the_surface() {
        let model = VeroneseModel::build();
        let pts = model.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let m = model.tangent_plane(&pts[i]).unwrap().meet(model.tangent_plane(&pts[j]).unwrap());
                assert_eq!(m.dim(), 0);
                assert!(!model.contains(&m.points()[0]));
            }
        }
    }

    #[test]
    fn partition_counts_and_tangent_counts() {
        let model = VeroneseModel::build();
        for c in model.conics() {
            let part = c.partition();
            assert_eq!((part.on_conic.len(), part.internal.len(), part.external.len()), (4, 3, 6));
            let tangents = c.tangent_lines();
            assert_eq!(tangents.len(), 4);
            let lines = c.plane.lines();
            for p in &part.internal {
                let bisecants = lines
                    .iter()
                    .filter(|l| l.contains(p) && c.points.iter().filter(|q| l.contains(q)).count() == 2)
                    .count();
                assert_eq!(bisecants, 2);
                assert_eq!(tangents.iter().filter(|t| t.contains(p)).count(), 0);
            }
            for p in &part.external {
                assert_eq!(tangents.iter().filter(|t| t.contains(p)).count(), 2);
            }
        }
    }

    #[test]
    fn internal_points_are_diagonal_points() {
        let model = VeroneseModel::build();
        for c in model.conics() {
            let q = &c.points;
            let diag = |a: usize, b: usize, x: usize, y: usize| {
                Flat::span(&[q[a].clone(), q[b].clone()])
                    .unwrap()
                    .meet(&Flat::span(&[q[x].clone(), q[y].clone()]).unwrap())
                    .points()[0]
                    .clone()
            };
            let diagonals = sorted([diag(0, 1, 2, 3), diag(0, 2, 1, 3), diag(0, 3, 1, 2)]);
            assert_eq!(diagonals, c.partition().internal);
        }
    }

    #[test]
    fn chordal_cubic_examples() {
        let model = VeroneseModel::build();
        assert!(model.points().iter().all(chordal_cubic_contains));
        assert!(!chordal_cubic_contains(&pt("1:0:0:1:0:1")));
    }

    #[test]
    fn lift_identity_and_singular() {
        assert!(lift_collineation(&GfMatrix::identity(3)).unwrap().is_identity());
        assert_eq!(lift_collineation(&GfMatrix::zeros(3, 3)), Err(Error::NotInvertible));
    }

    #[test]
    fn lift_intertwines_the_veronese_map() {
        let a = GfMatrix::from_ints(&[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]).unwrap();
        let lifted = lift_collineation(&a).unwrap();
        for x in enumerate_points(2) {
            let moved = ProjPoint::new(a.left_mul(x.coords()).unwrap()).unwrap();
            assert_eq!(veronese_map(&moved).unwrap(), lifted.apply(&veronese_map(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn dump_format() {
        let dump = VeroneseModel::build().dump();
        assert_eq!(dump.lines().count(), 13);
        let first = dump.lines().next().unwrap();
        assert!(first.starts_with("line=0:0:1 points="));
        assert!(first.ends_with("prime=0:0:0:0:0:1"));
    }
}
