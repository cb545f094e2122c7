//! Twelve-sets obtained by replacing the four conics through a surface
//! point with layers of their planes.
//!
//! For a fixed base point `P` the four conics through it are labelled
//! `m_0, m_1, m_2, m_∞`. At `P = F(1,0,0,0,0,0)` the label of the conic with
//! preimage line through `U = F(1,0,0)` and `F(0,x1,x2)` is `x2/x1`. Any other
//! base point is handled by transporting this labelling along a fixed plane
//! collineation sending `U` to the preimage of `P`.
//!
//! Each conic plane minus `P` and the tangent at `P` splits into three
//! layers `Δ_{k,0}` (the conic), `Δ_{k,1}` (internal points) and `Δ_{k,2}`
//! (external points off the tangent). A quadruple `(p,q,r,s)` selects one
//! layer per conic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cap::rho;
use crate::design::hyperplane_profile;
use crate::error::{Error, Result};
use crate::gf3::{Gf3, GfMatrix, GfVector};
use crate::pg::{
    enumerate_hyperplanes, line_through, perspectivity, rank_of, Collineation, Flat, Hyperplane, ProjPoint,
};
use crate::veronese::{chordal_cubic_contains, lift_collineation, sorted, veronese_map, VeroneseModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConicLabel {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Infinity,
}

impl ConicLabel {
    pub const ALL: [ConicLabel; 4] = [ConicLabel::Zero, ConicLabel::One, ConicLabel::Two, ConicLabel::Infinity];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The point `F(0,1,k)` (or `F(0,0,1)` for ∞) of the preimage line.
    fn direction(self) -> GfVector {
        match self {
            ConicLabel::Zero => GfVector::from_ints(&[0, 1, 0]),
            ConicLabel::One => GfVector::from_ints(&[0, 1, 1]),
            ConicLabel::Two => GfVector::from_ints(&[0, 1, 2]),
            ConicLabel::Infinity => GfVector::from_ints(&[0, 0, 1]),
        }
    }
}

impl fmt::Display for ConicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConicLabel::Zero => "0",
            ConicLabel::One => "1",
            ConicLabel::Two => "2",
            ConicLabel::Infinity => "inf",
        };
        f.write_str(s)
    }
}

/// Layer indices `(p, q, r, s)` for the conics `m_0, m_1, m_2, m_∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Quadruple(pub [Gf3; 4]);

impl Quadruple {
    pub fn from_ints(v: [i64; 4]) -> Quadruple {
        Quadruple(v.map(Gf3::new))
    }

    pub fn get(&self, k: ConicLabel) -> Gf3 {
        self.0[k.index()]
    }

    /// `p + q + r + s` mod 3.
    pub fn sum(&self) -> Gf3 {
        self.0.iter().copied().sum()
    }

    pub fn class(&self) -> SetClass {
        SetClass::from_sum(self.sum())
    }

    pub fn add(&self, other: &Quadruple) -> Quadruple {
        Quadruple(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// All 81 quadruples in lexicographic order.
    pub fn all() -> Vec<Quadruple> {
        GfVector::all(4).map(|v| Quadruple(std::array::from_fn(|i| v[i]))).collect()
    }
}

impl FromStr for Quadruple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("quadruple needs 4 entries: {s:?}")));
        }
        let mut out = [Gf3::ZERO; 4];
        for (slot, part) in out.iter_mut().zip(parts) {
            let d: u8 = part.parse().map_err(|_| Error::Parse(format!("bad entry {part:?}")))?;
            *slot = Gf3::try_from(d)?;
        }
        Ok(Quadruple(out))
    }
}

impl TryFrom<String> for Quadruple {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Quadruple> for String {
    fn from(q: Quadruple) -> String {
        q.to_string()
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r, s] = self.0;
        write!(f, "{p},{q},{r},{s}")
    }
}

impl fmt::Debug for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Projective class of a twelve-set, determined by the quadruple sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetClass {
    /// Sum 0: equivalent to the surface minus `P`.
    V,
    /// Sum 1: equivalent to the Witt cap.
    K,
    /// Sum 2.
    R,
}

impl SetClass {
    pub const ALL: [SetClass; 3] = [SetClass::V, SetClass::K, SetClass::R];

    pub fn from_sum(s: Gf3) -> SetClass {
        match s.value() {
            0 => SetClass::V,
            1 => SetClass::K,
            _ => SetClass::R,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwelveSet {
    pub points: Vec<ProjPoint>,
    pub quadruple: Quadruple,
}

/// A permutation of the points of one conic plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePermutation {
    map: BTreeMap<ProjPoint, ProjPoint>,
}

impl PlanePermutation {
    fn restrict(c: &Collineation, plane: &Flat) -> Result<PlanePermutation> {
        let mut map = BTreeMap::new();
        for x in plane.points() {
            let y = c.apply(&x)?;
            if !plane.contains(&y) {
                return Err(Error::Invariant(format!("{x} leaves its plane")));
            }
            map.insert(x, y);
        }
        Ok(PlanePermutation { map })
    }

    pub fn apply(&self, x: &ProjPoint) -> Option<&ProjPoint> {
        self.map.get(x)
    }

    pub fn apply_set(&self, xs: &[ProjPoint]) -> Vec<ProjPoint> {
        sorted(xs.iter().map(|x| self.map[x].clone()))
    }

    pub fn compose(&self, other: &PlanePermutation) -> PlanePermutation {
        PlanePermutation { map: self.map.iter().map(|(x, y)| (x.clone(), other.map[y].clone())).collect() }
    }

    pub fn power(&self, e: u8) -> PlanePermutation {
        let id = PlanePermutation { map: self.map.keys().map(|x| (x.clone(), x.clone())).collect() };
        (0..e).fold(id, |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(x, y)| x == y)
    }

    pub fn fixed_points(&self) -> Vec<ProjPoint> {
        self.map.iter().filter(|(x, y)| x == y).map(|(x, _)| x.clone()).collect()
    }
}

/// A collineation generated by the `μ(k)` together with the exponents
/// `e_k` such that it acts as `κ_k^{e_k}` on the plane of `m_k`.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub collineation: Collineation,
    pub exponents: Option<Quadruple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitWitness {
    pub from: Quadruple,
    pub to: Quadruple,
    /// Rows of the collineation matrix.
    pub matrix: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub claim: String,
    pub group_order: usize,
    pub class_v_orbit: usize,
    pub class_k_orbit: usize,
    pub class_v_covered: bool,
    pub class_k_covered: bool,
    pub joint_extension_in_group: bool,
    pub surface_part_has_coplanar_quadruple: bool,
    pub cap_has_coplanar_quadruple: bool,
    pub witnesses: Vec<OrbitWitness>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportReport {
    pub permutations_realized: usize,
    pub quadruples_checked: usize,
    pub all_rearrangements_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub target: Hyperplane,
    pub lines: Vec<Vec<ProjPoint>>,
    pub transversal: Vec<ProjPoint>,
    pub image_points: Vec<ProjPoint>,
    pub lines_pairwise_disjoint: bool,
    pub transversal_meets_each_once: bool,
    pub transversal_count: usize,
    pub image_is_lines_off_transversal: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RReport {
    pub quadruple: Quadruple,
    pub six_point_primes: Vec<Hyperplane>,
    pub common_point: Option<ProjPoint>,
    pub common_is_base_point: bool,
    pub projection: ProjectionReport,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub quadruple: Quadruple,
    pub class: SetClass,
    pub profile: BTreeMap<usize, usize>,
    pub chordal: bool,
}

/// Precomputed layers, elations and perspectivities for one base point.
#[derive(Clone, Debug)]
pub struct CosetExplorer {
    model: VeroneseModel,
    base: ProjPoint,
    frame: GfMatrix,
    conics: [usize; 4],
    tangents: [Flat; 4],
    layers: [[Vec<ProjPoint>; 3]; 4],
    kappa: [PlanePermutation; 4],
    mu: [Collineation; 4],
    reference_profiles: [BTreeMap<usize, usize>; 3],
    sets_by_points: HashMap<Vec<ProjPoint>, Quadruple>,
}

/// The matrix of `μ(0)` at the default base point:
/// `F(y00, ..., y22) ↦ F(y00 + y22, y01, y02, y11, y12, y22)`.
pub fn mu0_matrix() -> GfMatrix {
    let mut rows: Vec<GfVector> = (0..6).map(|i| GfVector::unit(6, i)).collect();
    rows[5] = GfVector::from_ints(&[1, 0, 0, 0, 0, 1]);
    GfMatrix::from_rows(&rows).expect("6x6")
}

/// A plane matrix whose first row is `u`, completed by unit vectors.
fn frame_for(u: &ProjPoint) -> GfMatrix {
    for (i, j) in [(1, 2), (0, 2), (0, 1)] {
        let m = GfMatrix::from_rows(&[u.coords().clone(), GfVector::unit(3, i), GfVector::unit(3, j)]).expect("3x3");
        if m.rank() == 3 {
            return m;
        }
    }
    unreachable!("some pair of unit vectors completes a nonzero vector to a basis")
}

/// Plane map fixing `U` and sending the direction of `m_0` to that of `m_k`.
fn conjugator(k: ConicLabel) -> GfMatrix {
    let e = |i| GfVector::unit(3, i);
    let rows = match k {
        ConicLabel::Infinity => [e(0), e(2), e(1)],
        _ => [e(0), k.direction(), e(2)],
    };
    GfMatrix::from_rows(&rows).expect("3x3")
}

impl CosetExplorer {
    pub fn new(model: &VeroneseModel, p: &ProjPoint) -> Result<CosetExplorer> {
        model.require_point(p)?;
        let u = model.preimage(p).expect("on surface").clone();
        let frame = frame_for(&u);
        let frame_lift = lift_collineation(&frame)?;

        let conics = ConicLabel::ALL.map(|k| {
            let d = ProjPoint::new(frame.left_mul(&k.direction()).expect("3")).expect("nonzero");
            let y = veronese_map(&d).expect("plane point");
            model.conic_through_pair(p, &y).expect("distinct surface points")
        });
        let tangents = conics.map(|c| model.conics()[c].tangent_at(p).expect("p on conic"));
        let layers: [[Vec<ProjPoint>; 3]; 4] = std::array::from_fn(|i| {
            let c = &model.conics()[conics[i]];
            let part = c.partition();
            let on: Vec<ProjPoint> = c.points.iter().filter(|x| *x != p).cloned().collect();
            let off_tangent: Vec<ProjPoint> =
                part.external.iter().filter(|x| !tangents[i].contains(x)).cloned().collect();
            [on, part.internal, off_tangent]
        });

        let mut kappa = Vec::with_capacity(4);
        for i in 0..4 {
            kappa.push(Self::build_kappa(model, p, &model.conics()[conics[i]].plane, &tangents[i], &layers[i][0][0])?);
        }
        let kappa: [PlanePermutation; 4] = kappa.try_into().expect("four");

        let mu0 = Collineation::new(mu0_matrix())?;
        let frame_inv = frame_lift.inverse();
        let mu = ConicLabel::ALL.map(|k| {
            let g = lift_collineation(&conjugator(k)).expect("invertible");
            let at_default = g.inverse().then(&mu0).and_then(|m| m.then(&g)).expect("6x6");
            frame_inv.then(&at_default).and_then(|m| m.then(&frame_lift)).expect("6x6")
        });

        let mut explorer = CosetExplorer {
            model: model.clone(),
            base: p.clone(),
            frame,
            conics,
            tangents,
            layers,
            kappa,
            mu,
            reference_profiles: Default::default(),
            sets_by_points: HashMap::new(),
        };
        explorer.check_mu_pins()?;
        for q in Quadruple::all() {
            let s = explorer.twelve_set(q);
            explorer.sets_by_points.insert(s.points, q);
        }
        if explorer.sets_by_points.len() != 81 {
            return Err(Error::Invariant("twelve-sets are not pairwise distinct".into()));
        }
        explorer.reference_profiles = [
            hyperplane_profile(&explorer.twelve_set(Quadruple::from_ints([0, 0, 0, 0])).points),
            hyperplane_profile(&explorer.twelve_set(Quadruple::from_ints([1, 0, 0, 0])).points),
            hyperplane_profile(&explorer.twelve_set(Quadruple::from_ints([2, 0, 0, 0])).points),
        ];
        let [a, b, c] = &explorer.reference_profiles;
        if a == b || b == c || a == c {
            return Err(Error::Invariant("class profiles are not pairwise distinct".into()));
        }
        Ok(explorer)
    }

    /// The elation of the conic plane with centre `p` and axis the tangent at
    /// `p` that agrees with `ρ` on the conic, obtained by restricting a
    /// perspectivity of PG(5,3) whose axis cuts the plane in that tangent.
    fn build_kappa(
        model: &VeroneseModel,
        p: &ProjPoint,
        plane: &Flat,
        tangent: &Flat,
        y: &ProjPoint,
    ) -> Result<PlanePermutation> {
        let axis = enumerate_hyperplanes(5)
            .into_iter()
            .find(|h| tangent.is_subflat_of(&h.to_flat()) && !plane.is_subflat_of(&h.to_flat()))
            .expect("a prime through a line misses some plane point");
        let image = rho(model, p, y)?;
        let c = perspectivity(p, &axis, (y, &image))?;
        PlanePermutation::restrict(&c, plane)
    }

    fn check_mu_pins(&self) -> Result<()> {
        for k in ConicLabel::ALL {
            for j in ConicLabel::ALL {
                let induced = self.induced_on(&self.mu[k.index()], j)?;
                let expected = if j == k { 0 } else { 1 };
                if induced != Some(Gf3::new(expected)) {
                    return Err(Error::Invariant(format!("mu({k}) acts as {induced:?} on m_{j}")));
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> &VeroneseModel {
        &self.model
    }

    pub fn base_point(&self) -> &ProjPoint {
        &self.base
    }

    /// The plane collineation carrying the default labelling to this base point.
    pub fn frame(&self) -> &GfMatrix {
        &self.frame
    }

    pub fn conic_index(&self, k: ConicLabel) -> usize {
        self.conics[k.index()]
    }

    pub fn conic_plane(&self, k: ConicLabel) -> &Flat {
        &self.model.conics()[self.conics[k.index()]].plane
    }

    pub fn tangent(&self, k: ConicLabel) -> &Flat {
        &self.tangents[k.index()]
    }

    /// `Δ_{k,j}`.
    pub fn layer(&self, k: ConicLabel, j: Gf3) -> &[ProjPoint] {
        &self.layers[k.index()][j.value() as usize]
    }

    pub fn kappa(&self, k: ConicLabel) -> &PlanePermutation {
        &self.kappa[k.index()]
    }

    pub fn mu(&self, k: ConicLabel) -> &Collineation {
        &self.mu[k.index()]
    }

    /// The exponent `e` with `c` acting as `κ_k^e` on the plane of `m_k`.
    pub fn induced_on(&self, c: &Collineation, k: ConicLabel) -> Result<Option<Gf3>> {
        let restricted = match PlanePermutation::restrict(c, self.conic_plane(k)) {
            Ok(r) => r,
            Err(Error::Invariant(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok((0..3u8).find(|&e| self.kappa[k.index()].power(e) == restricted).map(|e| Gf3::new(e as i64)))
    }

    pub fn twelve_set(&self, q: Quadruple) -> TwelveSet {
        let points = sorted(ConicLabel::ALL.iter().flat_map(|&k| self.layer(k, q.get(k)).to_vec()));
        TwelveSet { points, quadruple: q }
    }

    /// The quadruple whose twelve-set is exactly `points`, if any.
    pub fn identify(&self, points: &[ProjPoint]) -> Option<Quadruple> {
        self.sets_by_points.get(&sorted(points.iter().cloned())).copied()
    }

    pub fn hyperplane_profile(&self, s: &TwelveSet) -> BTreeMap<usize, usize> {
        hyperplane_profile(&s.points)
    }

    pub fn reference_profile(&self, class: SetClass) -> &BTreeMap<usize, usize> {
        &self.reference_profiles[class.index()]
    }

    /// Class by quadruple sum, confirmed by the hyperplane profile.
    pub fn classify(&self, s: &TwelveSet) -> Result<SetClass> {
        let class = s.quadruple.class();
        let profile = self.hyperplane_profile(s);
        if &profile != self.reference_profile(class) {
            return Err(Error::ClassMismatch(format!(
                "quadruple {} has sum class {class} but profile {profile:?}",
                s.quadruple
            )));
        }
        Ok(class)
    }

    /// Closure of `{μ(k)}` under composition.
    pub fn mu_group(&self) -> Result<Vec<GroupElement>> {
        let mut seen: BTreeSet<Collineation> = BTreeSet::new();
        let mut frontier = vec![Collineation::identity(5)];
        seen.insert(Collineation::identity(5));
        while let Some(g) = frontier.pop() {
            for m in &self.mu {
                let h = g.then(m)?;
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen.into_iter()
            .map(|c| {
                let mut ex = [Gf3::ZERO; 4];
                for k in ConicLabel::ALL {
                    match self.induced_on(&c, k)? {
                        Some(e) => ex[k.index()] = e,
                        None => return Ok(GroupElement { collineation: c, exponents: None }),
                    }
                }
                Ok(GroupElement { collineation: c, exponents: Some(Quadruple(ex)) })
            })
            .collect()
    }

    fn orbit(&self, group: &[GroupElement], start: Quadruple) -> Result<(BTreeSet<Quadruple>, Vec<OrbitWitness>)> {
        let source = self.twelve_set(start).points;
        let mut reached = BTreeSet::new();
        let mut witnesses = Vec::new();
        for g in group {
            let image = g.collineation.apply_all(&source)?;
            let Some(q) = self.identify(&image) else {
                return Err(Error::Invariant(format!("image of {start} under a mu-group element is no twelve-set")));
            };
            if reached.insert(q) {
                witnesses.push(OrbitWitness {
                    from: start,
                    to: q,
                    matrix: g.collineation.matrix().row_vectors().iter().map(ToString::to_string).collect(),
                });
            }
        }
        Ok((reached, witnesses))
    }

    pub fn verify_orbit_equivalence(&self) -> Result<OrbitReport> {
        let group = self.mu_group()?;
        let of_class =
            |c: SetClass| -> BTreeSet<Quadruple> { Quadruple::all().into_iter().filter(|q| q.class() == c).collect() };
        let (orbit_v, mut witnesses) = self.orbit(&group, Quadruple::from_ints([0, 0, 0, 0]))?;
        let (orbit_k, w_k) = self.orbit(&group, Quadruple::from_ints([1, 1, 1, 1]))?;
        witnesses.extend(w_k);
        let all_ones = Quadruple::from_ints([1, 1, 1, 1]);
        let joint = group.iter().any(|g| g.exponents == Some(all_ones));
        let surface_part = self.twelve_set(Quadruple::from_ints([0, 0, 0, 0])).points;
        let cap = self.twelve_set(all_ones).points;
        let report = OrbitReport {
            claim: "replaced-conic sets with sum 0 and sum 1 are projectively equivalent within their coset".into(),
            group_order: group.len(),
            class_v_orbit: orbit_v.len(),
            class_k_orbit: orbit_k.len(),
            class_v_covered: orbit_v == of_class(SetClass::V),
            class_k_covered: orbit_k == of_class(SetClass::K),
            joint_extension_in_group: joint,
            surface_part_has_coplanar_quadruple: has_coplanar_quadruple(&surface_part),
            cap_has_coplanar_quadruple: has_coplanar_quadruple(&cap),
            witnesses,
            pass: false,
        };
        let pass = report.group_order == 27
            && report.class_v_covered
            && report.class_k_covered
            && !report.joint_extension_in_group
            && report.surface_part_has_coplanar_quadruple
            && !report.cap_has_coplanar_quadruple;
        Ok(OrbitReport { pass, ..report })
    }

    /// Lifted plane collineations fixing the base point realise every
    /// permutation of the four conics, and carry `Δ_{k,j}` to `Δ_{σ(k),j}`.
    pub fn verify_permutation_transport(&self) -> Result<TransportReport> {
        let frame_lift = lift_collineation(&self.frame)?;
        let frame_inv = frame_lift.inverse();
        let mut found: BTreeMap<[usize; 4], Collineation> = BTreeMap::new();
        for rest in GfVector::all(6) {
            let a = GfMatrix::new(3, 3, [GfVector::unit(3, 0).entries(), rest.entries()].concat())?;
            let Ok(g) = lift_collineation(&a) else { continue };
            let g = frame_inv.then(&g)?.then(&frame_lift)?;
            let mut sigma = [0usize; 4];
            for k in ConicLabel::ALL {
                let image = Flat::span(&g.apply_all(&self.conic_plane(k).points())?)?;
                sigma[k.index()] = ConicLabel::ALL
                    .iter()
                    .position(|&j| self.conic_plane(j) == &image)
                    .ok_or_else(|| Error::Invariant("conic plane not mapped to a conic plane".into()))?;
            }
            found.entry(sigma).or_insert(g);
        }
        let mut ok = true;
        let mut checked = 0;
        for (sigma, g) in &found {
            for q in Quadruple::all() {
                let mut moved = [Gf3::ZERO; 4];
                for k in 0..4 {
                    moved[sigma[k]] = q.0[k];
                }
                let image = g.apply_all(&self.twelve_set(q).points)?;
                ok &= self.identify(&image) == Some(Quadruple(moved));
                checked += 1;
            }
        }
        Ok(TransportReport {
            permutations_realized: found.len(),
            quadruples_checked: checked,
            all_rearrangements_equivalent: ok && found.len() == 24,
        })
    }

    /// Projection from the base point onto a prime not through it.
    pub fn project_from_base(&self, s: &TwelveSet, target: &Hyperplane) -> Result<ProjectionReport> {
        let p = &self.base;
        if target.contains(p) {
            return Err(Error::Perspectivity(format!("target {target} contains the centre {p}")));
        }
        let hp = target.coords().dot(p.coords());
        let scale = -hp.inv().expect("nonzero");
        let project = |x: &ProjPoint| -> Result<ProjPoint> {
            let t = target.coords().dot(x.coords()) * scale;
            ProjPoint::new(x.coords() + &p.coords().scale(t))
        };
        let project_flat = |f: &Flat| -> Result<Vec<ProjPoint>> {
            Ok(sorted(f.points().iter().filter(|x| *x != p).map(project).collect::<Result<Vec<_>>>()?))
        };
        let lines = ConicLabel::ALL.iter().map(|&k| project_flat(self.conic_plane(k))).collect::<Result<Vec<_>>>()?;
        let tangent_plane = self.model.tangent_plane(p).expect("on surface");
        let transversal = project_flat(tangent_plane)?;
        let image_points = sorted(s.points.iter().map(project).collect::<Result<Vec<_>>>()?);

        let is_line = |pts: &[ProjPoint]| pts.len() == 4 && rank_of(&pts.iter().collect::<Vec<_>>()) == 2;
        let mut disjoint = lines.iter().all(|l| is_line(l));
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                disjoint &= lines[i].iter().all(|x| !lines[j].contains(x));
            }
        }
        let meets_once =
            is_line(&transversal) && lines.iter().all(|l| l.iter().filter(|x| transversal.contains(x)).count() == 1);
        let off_transversal = sorted(lines.iter().flatten().filter(|x| !transversal.contains(x)).cloned());
        let image_ok = image_points == off_transversal && image_points.len() == 12;

        let mut transversals = BTreeSet::new();
        if lines.len() == 4 && disjoint {
            for a in &lines[0] {
                for b in &lines[1] {
                    let l = line_through(a, b)?;
                    if lines[2..].iter().all(|m| m.iter().any(|x| l.contains(x))) {
                        transversals.insert(l);
                    }
                }
            }
        }
        let pass = disjoint && meets_once && image_ok && transversals.len() == 1;
        Ok(ProjectionReport {
            target: target.clone(),
            lines,
            transversal,
            image_points,
            lines_pairwise_disjoint: disjoint,
            transversal_meets_each_once: meets_once,
            transversal_count: transversals.len(),
            image_is_lines_off_transversal: image_ok,
            pass,
        })
    }

    /// First prime in enumeration order missing the base point.
    pub fn default_target(&self) -> Hyperplane {
        enumerate_hyperplanes(5).into_iter().find(|h| !h.contains(&self.base)).expect("exists")
    }

    pub fn analyze_r(&self, s: &TwelveSet, target: Option<&Hyperplane>) -> Result<RReport> {
        let class = self.classify(s)?;
        if class != SetClass::R {
            return Err(Error::ClassMismatch(format!("{} is in class {class}, not R", s.quadruple)));
        }
        let six_point_primes: Vec<Hyperplane> = enumerate_hyperplanes(5)
            .into_iter()
            .filter(|h| s.points.iter().filter(|x| h.contains(x)).count() == 6)
            .collect();
        let rows: Vec<GfVector> = six_point_primes.iter().map(|h| h.coords().clone()).collect();
        let common = Flat::from_vectors(6, &GfMatrix::from_rows(&rows)?.nullspace());
        let common_point = (common.dim() == 0).then(|| common.points()[0].clone());
        let target = target.cloned().unwrap_or_else(|| self.default_target());
        let projection = self.project_from_base(s, &target)?;
        let common_is_base_point = common_point.as_ref() == Some(&self.base);
        let pass = six_point_primes.len() == 42 && common_is_base_point && projection.pass;
        Ok(RReport { quadruple: s.quadruple, six_point_primes, common_point, common_is_base_point, projection, pass })
    }

    /// One row per quadruple, in lexicographic order.
    pub fn scan(&self) -> Result<Vec<ScanRow>> {
        Quadruple::all()
            .into_iter()
            .map(|q| {
                let s = self.twelve_set(q);
                Ok(ScanRow {
                    quadruple: q,
                    class: self.classify(&s)?,
                    profile: self.hyperplane_profile(&s),
                    chordal: s.points.iter().all(chordal_cubic_contains),
                })
            })
            .collect()
    }
}

/// Whether some four of the points lie in a plane.
pub fn has_coplanar_quadruple(points: &[ProjPoint]) -> bool {
    let n = points.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|c| (c + 1..n).any(|d| rank_of(&[&points[a], &points[b], &points[c], &points[d]]) < 4))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::{base_point, build_cap_psi};
    use crate::veronese::arc_partition;

    fn explorer() -> CosetExplorer {
        CosetExplorer::new(&VeroneseModel::build(), &base_point()).unwrap()
    }

    #[test]
    fn quadruple_parsing_and_classes() {
        let q: Quadruple = "2,0,0,0".parse().unwrap();
        assert_eq!(q.class(), SetClass::R);
        assert_eq!(Quadruple::from_ints([1, 1, 1, 1]).class(), SetClass::K);
        assert!("1,2,3,0".parse::<Quadruple>().is_err());
        assert!("1,2,0".parse::<Quadruple>().is_err());
        for c in SetClass::ALL {
            assert_eq!(Quadruple::all().iter().filter(|q| q.class() == c).count(), 27);
        }
    }

    #[test]
    fn default_labelling() {
        let e = explorer();
        assert!(e.frame().eq(&GfMatrix::identity(3)));
        let m0 = &e.model().conics()[e.conic_index(ConicLabel::Zero)];
        assert_eq!(m0.preimage_line.to_string(), "0:0:1");
        let m_inf = &e.model().conics()[e.conic_index(ConicLabel::Infinity)];
        assert_eq!(m_inf.preimage_line.to_string(), "0:1:0");
    }

    #[test]
    fn layers_have_three_points_and_partition_the_plane() {
        let e = explorer();
        for k in ConicLabel::ALL {
            let mut all: Vec<ProjPoint> = Vec::new();
            for j in Gf3::ALL {
                assert_eq!(e.layer(k, j).len(), 3);
                all.extend(e.layer(k, j).iter().cloned());
            }
            let expected: Vec<ProjPoint> =
                e.conic_plane(k).points().into_iter().filter(|x| !e.tangent(k).contains(x)).collect();
            assert_eq!(sorted(all), expected);
            let c = &e.model().conics()[e.conic_index(k)];
            assert_eq!(e.layer(k, Gf3::ONE), c.partition().internal.as_slice());
        }
    }

    #[test]
    fn kappa_cycles_layers() {
        let e = explorer();
        let p = base_point();
        for k in ConicLabel::ALL {
            let kappa = e.kappa(k);
            assert_eq!(kappa.apply(&p), Some(&p));
            for x in e.tangent(k).points() {
                assert_eq!(kappa.apply(&x), Some(&x));
            }
            assert!(kappa.power(3).is_identity());
            assert!(!kappa.is_identity());
            for j in Gf3::ALL {
                assert_eq!(kappa.apply_set(e.layer(k, j)), e.layer(k, j + Gf3::ONE));
                let mut arc = e.layer(k, j).to_vec();
                arc.push(p.clone());
                assert_eq!(arc_partition(&arc).unwrap().internal, e.layer(k, j + Gf3::ONE));
            }
            for y in e.layer(k, Gf3::ZERO) {
                assert_eq!(kappa.apply(y).unwrap(), &rho(e.model(), &p, y).unwrap());
            }
        }
    }

    #[test]
    fn mu0_is_the_literal_matrix() {
        let e = explorer();
        let mu0 = e.mu(ConicLabel::Zero);
        assert_eq!(mu0.matrix(), &mu0_matrix());
        let x: ProjPoint = "0:0:0:0:0:1".parse().unwrap();
        assert_eq!(mu0.apply(&x).unwrap().to_string(), "1:0:0:0:0:1");
        assert_eq!(mu0.apply(&base_point()).unwrap(), base_point());
        assert!(PlanePermutation::restrict(mu0, e.conic_plane(ConicLabel::Zero)).unwrap().is_identity());
        // the same map from centre, axis and one pair
        let axis = e.model().osculating_prime(e.conic_index(ConicLabel::Zero));
        assert_eq!(axis.to_string(), "0:0:0:0:0:1");
        let image: ProjPoint = "1:0:0:0:0:1".parse().unwrap();
        assert_eq!(&perspectivity(&base_point(), axis, (&x, &image)).unwrap(), mu0);
    }

    #[test]
    fn mu_axes_are_osculating_primes() {
        let e = explorer();
        for k in ConicLabel::ALL {
            let axis = e.model().osculating_prime(e.conic_index(k));
            let fixed: Vec<ProjPoint> =
                crate::pg::enumerate_points(5).into_iter().filter(|x| e.mu(k).apply(x).unwrap() == *x).collect();
            let on_axis: Vec<ProjPoint> =
                crate::pg::enumerate_points(5).into_iter().filter(|x| axis.contains(x)).collect();
            assert_eq!(fixed, on_axis);
        }
    }

    #[test]
    fn base_cases() {
        let e = explorer();
        let model = e.model();
        let v_minus_p: Vec<ProjPoint> = sorted(model.points().iter().filter(|x| **x != base_point()).cloned());
        assert_eq!(e.twelve_set(Quadruple::from_ints([0, 0, 0, 0])).points, v_minus_p);
        assert_eq!(e.twelve_set(Quadruple::from_ints([1, 1, 1, 1])).points, build_cap_psi().sorted_points());
        for q in Quadruple::all() {
            assert_eq!(e.twelve_set(q).points.len(), 12);
        }
    }

    #[test]
    fn classification_and_errors() {
        let e = explorer();
        let k = e.twelve_set(Quadruple::from_ints([1, 1, 1, 1]));
        assert_eq!(e.classify(&k).unwrap(), SetClass::K);
        let r = e.twelve_set(Quadruple::from_ints([2, 0, 0, 0]));
        assert_eq!(e.classify(&r).unwrap(), SetClass::R);
        let forged = TwelveSet { points: k.points.clone(), quadruple: Quadruple::from_ints([2, 0, 0, 0]) };
        assert!(matches!(e.classify(&forged), Err(Error::ClassMismatch(_))));
        assert!(matches!(e.analyze_r(&k, None), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn projection_rejects_target_through_centre() {
        let e = explorer();
        let r = e.twelve_set(Quadruple::from_ints([2, 0, 0, 0]));
        let bad: Hyperplane = "0:0:0:0:0:1".parse().unwrap();
        assert!(matches!(e.project_from_base(&r, &bad), Err(Error::Perspectivity(_))));
        assert_eq!(e.default_target().to_string(), "1:0:0:0:0:0");
    }

    #[test]
    fn other_base_point() {
        let model = VeroneseModel::build();
        let p = model.points()[7].clone();
        let e = CosetExplorer::new(&model, &p).unwrap();
        let report = e.verify_orbit_equivalence().unwrap();
        assert!(report.pass, "{report:?}");
        let r = e.twelve_set(Quadruple::from_ints([0, 1, 1, 0]));
        assert!(e.analyze_r(&r, None).unwrap().pass);
    }
}
