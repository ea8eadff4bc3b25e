//! Dynkin diagrams and parabolic quotients, the Fano threefold rigidity screen,
//! and Δ-divisor bookkeeping under toric blow-ups of surfaces.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fan::{self, Fan};
use crate::linalg::{self, Q};

pub const MAX_DYNKIN_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub const ALL: [DynkinType; 7] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F, Self::G];

    pub fn legal_rank(self, n: usize) -> bool {
        match self {
            Self::A => n >= 1,
            Self::B | Self::C => n >= 2,
            Self::D => n >= 4,
            Self::E => (6..=8).contains(&n),
            Self::F => n == 4,
            Self::G => n == 2,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A connected Dynkin diagram with Bourbaki node labels 1..=n and a set of marked nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedDynkinDiagram {
    kind: DynkinType,
    rank: usize,
    marked: BTreeSet<usize>,
}

impl MarkedDynkinDiagram {
    pub fn new(kind: DynkinType, rank: usize, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        if rank > MAX_DYNKIN_RANK || !kind.legal_rank(rank) {
            return Err(Error::Dynkin(format!("{kind}{rank} is not a supported diagram")));
        }
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if let Some(&bad) = marked.iter().find(|&&a| a == 0 || a > rank) {
            return Err(Error::Dynkin(format!("node {bad} outside 1..={rank}")));
        }
        Ok(MarkedDynkinDiagram { kind, rank, marked })
    }

    pub fn kind(&self) -> DynkinType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    /// The same diagram with only node `a` marked.
    pub fn single(&self, a: usize) -> Result<Self> {
        Self::new(self.kind, self.rank, [a])
    }

    /// Every legal diagram of rank at most `max_rank`, unmarked.
    pub fn all_up_to(max_rank: usize) -> Vec<(DynkinType, usize)> {
        let mut out = Vec::new();
        for k in DynkinType::ALL {
            for n in 1..=max_rank.min(MAX_DYNKIN_RANK) {
                if k.legal_rank(n) {
                    out.push((k, n));
                }
            }
        }
        out
    }
}

impl fmt::Display for MarkedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.marked.iter().map(usize::to_string).collect();
        write!(f, "{}{}:{}", self.kind, self.rank, nodes.join(","))
    }
}

impl FromStr for MarkedDynkinDiagram {
    type Err = Error;

    /// Syntax `A3:1`, `A2:1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, nodes) = s.split_once(':').ok_or_else(|| Error::Dynkin(format!("expected TYPE RANK:NODES, got {s:?}")))?;
        let mut chars = head.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinType::A,
            Some('B') => DynkinType::B,
            Some('C') => DynkinType::C,
            Some('D') => DynkinType::D,
            Some('E') => DynkinType::E,
            Some('F') => DynkinType::F,
            Some('G') => DynkinType::G,
            _ => return Err(Error::Dynkin(format!("unknown type in {s:?}"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Dynkin(format!("bad rank in {s:?}")))?;
        let marked = nodes
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Dynkin(format!("bad node {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, rank, marked)
    }
}

// Simple roots in an integer model; F4 and E use doubled coordinates.
fn simple_roots(kind: DynkinType, n: usize) -> Vec<Vec<i64>> {
    let e = |dim: usize, i: usize, c: i64| -> Vec<i64> {
        let mut v = vec![0; dim];
        v[i] = c;
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<i64> {
        let mut v = vec![0; dim];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    match kind {
        DynkinType::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        DynkinType::B | DynkinType::C | DynkinType::D => {
            let mut r: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(match kind {
                DynkinType::B => e(n, n - 1, 1),
                DynkinType::C => e(n, n - 1, 2),
                _ => {
                    let mut v = e(n, n - 1, 1);
                    v[n - 2] = 1;
                    v
                }
            });
            r
        }
        DynkinType::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        DynkinType::F => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
        DynkinType::E => {
            let mut r = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0], diff(8, 1, 0)];
            r[2].iter_mut().for_each(|x| *x *= 2);
            for i in 1..6 {
                let mut v = diff(8, i + 1, i);
                v.iter_mut().for_each(|x| *x *= 2);
                r.push(v);
            }
            r.truncate(n);
            r
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cartan matrix A_ij = 2(α_i, α_j)/(α_j, α_j).
pub fn cartan_matrix(kind: DynkinType, n: usize) -> Result<Vec<Vec<i64>>> {
    MarkedDynkinDiagram::new(kind, n, [])?;
    let r = simple_roots(kind, n);
    Ok((0..n).map(|i| (0..n).map(|j| 2 * dot(&r[i], &r[j]) / dot(&r[j], &r[j])).collect()).collect())
}

/// Positive roots in simple-root coordinates, by closing the simple roots under simple reflections.
pub fn positive_roots(kind: DynkinType, n: usize) -> Result<Vec<Vec<i64>>> {
    let a = cartan_matrix(kind, n)?;
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
    let mut out = simple.clone();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| b[j] * a[j][i]).sum();
            if pair >= 0 {
                continue;
            }
            let mut c = b.clone();
            c[i] -= pair;
            if seen.insert(c.clone()) {
                out.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Ok(out)
}

/// dim G/P: positive roots with a nonzero coefficient on some marked node.
pub fn dim_g_mod_p(d: &MarkedDynkinDiagram) -> Result<usize> {
    let roots = positive_roots(d.kind, d.rank)?;
    Ok(roots.iter().filter(|r| d.marked.iter().any(|&a| r[a - 1] != 0)).count())
}

/// Some(r) when G/P(α) ≅ P^r: A_n with α ∈ {1, n}, or C_n with α = 1.
pub fn is_projective_space(d: &MarkedDynkinDiagram) -> Result<Option<usize>> {
    if d.marked.len() != 1 {
        return Err(Error::Dynkin(format!("{d} must have exactly one marked node")));
    }
    let a = *d.marked.iter().next().expect("one node");
    Ok(match d.kind {
        DynkinType::A if a == 1 || a == d.rank => Some(d.rank),
        DynkinType::C if a == 1 => Some(2 * d.rank - 1),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicVerdict {
    ProjSpace(usize),
    /// The incidence variety F_{1,n} ⊂ P^n × P^n.
    Incidence(usize),
    Neither(String),
}

impl fmt::Display for ParabolicVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ProjSpace(r) => write!(f, "P^{r}"),
            Self::Incidence(n) => write!(f, "F(1,{n})"),
            Self::Neither(why) => write!(f, "neither: {why}"),
        }
    }
}

/// Checks each maximal parabolic over P for G/P_max ≅ P^r and names the result.
pub fn classify_max_parabolic_quotients(d: &MarkedDynkinDiagram) -> Result<ParabolicVerdict> {
    if d.marked.is_empty() {
        return Err(Error::Dynkin(format!("{d} has no marked node")));
    }
    for &a in &d.marked {
        if is_projective_space(&d.single(a)?)?.is_none() {
            return Ok(ParabolicVerdict::Neither(format!("{}{}/P({a}) is not a projective space", d.kind, d.rank)));
        }
    }
    if d.marked.len() == 1 {
        let a = *d.marked.iter().next().expect("one node");
        let r = is_projective_space(&d.single(a)?)?.expect("checked above");
        return Ok(ParabolicVerdict::ProjSpace(r));
    }
    if d.kind == DynkinType::A && d.marked.len() == 2 && d.marked.contains(&1) && d.marked.contains(&d.rank) {
        return Ok(ParabolicVerdict::Incidence(d.rank));
    }
    Ok(ParabolicVerdict::Neither(format!("marking {d} is not A_n with nodes 1 and n")))
}

const MORI_MUKAI: &str = include_str!("../data/mori_mukai.csv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoInvariants {
    pub id: String,
    pub rho: u32,
    pub minus_k3: i64,
    pub b3: i64,
    pub category: Option<String>,
}

impl FanoInvariants {
    pub fn new(id: &str, rho: u32, minus_k3: i64, b3: i64) -> Result<Self> {
        let f = FanoInvariants { id: id.to_string(), rho, minus_k3, b3, category: None };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(format!("{}: {msg}", self.id)));
        if self.rho == 0 {
            return bad("Picard rank must be positive".into());
        }
        if self.minus_k3 <= 0 || self.minus_k3 % 2 != 0 {
            return bad(format!("-K^3 = {} must be positive and even", self.minus_k3));
        }
        if self.b3 < 0 || self.b3 % 2 != 0 {
            return bad(format!("b3 = {} must be even and nonnegative", self.b3));
        }
        Ok(())
    }

    /// χ(X, T_X) = −K³/2 − 18 + ρ − b₃/2, using c₁c₂ = 24.
    pub fn chi_tangent(&self) -> i64 {
        self.minus_k3 / 2 - 18 + self.rho as i64 - self.b3 / 2
    }
}

/// Reads `id,rho,minusK3,b3[,category]` rows; `#` starts a comment line.
pub fn parse_fano_csv(text: &str) -> Result<Vec<FanoInvariants>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Table { line: 1, msg: e.to_string() })?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let need = |name: &str| col(name).ok_or_else(|| Error::Table { line: 1, msg: format!("missing column {name}") });
    let (ci, cr, ck, cb) = (need("id")?, need("rho")?, need("minusK3")?, need("b3")?);
    let cc = col("category");
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Table { line: e.position().map_or(0, |p| p.line() as usize), msg: e.to_string() })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize, name: &str| rec.get(i).filter(|s| !s.is_empty()).ok_or_else(|| Error::Table { line, msg: format!("missing {name}") });
        let int = |i: usize, name: &str| -> Result<i64> {
            let s = field(i, name)?;
            s.parse().map_err(|_| Error::Table { line, msg: format!("{name} = {s:?} is not an integer") })
        };
        let rho = int(cr, "rho")?;
        let row = FanoInvariants {
            id: field(ci, "id")?.to_string(),
            rho: u32::try_from(rho).map_err(|_| Error::Table { line, msg: format!("rho = {rho} out of range") })?,
            minus_k3: int(ck, "minusK3")?,
            b3: int(cb, "b3")?,
            category: cc.and_then(|i| rec.get(i)).filter(|s| !s.is_empty()).map(str::to_string),
        };
        row.validate().map_err(|e| Error::Table { line, msg: e.to_string() })?;
        if out.iter().any(|r: &FanoInvariants| r.id == row.id) {
            return Err(Error::Table { line, msg: format!("duplicate id {}", row.id) });
        }
        out.push(row);
    }
    Ok(out)
}

/// The bundled Mori–Mukai table.
pub fn mori_mukai_table() -> Result<Vec<FanoInvariants>> {
    parse_fano_csv(MORI_MUKAI)
}

pub const NON_RIGID: &str = "not F-liftable (non-rigid)";
pub const EXTERNAL: &str = "requires external argument";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenRow {
    pub invariants: FanoInvariants,
    pub chi: i64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoScreen {
    pub rows: Vec<ScreenRow>,
    /// category → ids, when the table has a category column
    pub partition: BTreeMap<String, Vec<String>>,
}

impl FanoScreen {
    pub fn negative(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.chi < 0).map(|r| r.invariants.id.as_str()).collect()
    }

    pub fn row(&self, id: &str) -> Option<&ScreenRow> {
        self.rows.iter().find(|r| r.invariants.id == id)
    }
}

pub fn fano_rigidity_screen(rows: &[FanoInvariants]) -> FanoScreen {
    let mut partition: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let rows = rows
        .iter()
        .map(|inv| {
            let chi = inv.chi_tangent();
            let verdict = match inv.category.as_deref() {
                _ if chi < 0 => NON_RIGID.to_string(),
                Some("other") => EXTERNAL.to_string(),
                Some("toric") => "F-liftable (toric)".to_string(),
                Some(c) => format!("not F-liftable ({c})"),
                None => "screen inconclusive".to_string(),
            };
            if let Some(c) = &inv.category {
                partition.entry(c.clone()).or_default().push(inv.id.clone());
            }
            ScreenRow { invariants: inv.clone(), chi, verdict }
        })
        .collect();
    FanoScreen { rows, partition }
}

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

/// Rational m with ⟨m, u_ρ⟩ = c_ρ for every ray, if one exists.
fn principal_witness(fan: &Fan, c: &[Q]) -> Option<Vec<Q>> {
    let n = fan.rank();
    let mut aug: linalg::QMatrix =
        fan.rays().iter().zip(c).map(|(u, &ci)| u.iter().map(|&x| q(x)).chain([ci]).collect()).collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut m = vec![q(0); n];
    for (row, &pc) in pivots.iter().enumerate() {
        m[pc] = aug[row][n];
    }
    Some(m)
}

/// A prime divisor not supported on the boundary, recorded by its class
/// (a combination of boundary divisors). It is assumed smooth and disjoint
/// from the torus-fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraComponent {
    pub label: String,
    pub class: Vec<i64>,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUpRecord {
    /// the two rays spanning the blown-up cone, in the fan before the blow-up
    pub cone: Vec<usize>,
    pub new_ray: Vec<i64>,
    pub e_coefficient: Q,
}

/// A smooth complete toric surface with a Q-divisor Δ ∼_Q −K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDeltaState {
    fan: Fan,
    coeffs: Vec<Q>,
    extra: Vec<ExtraComponent>,
    history: Vec<BlowUpRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    /// the torus-fixed point of the maximal cone with this index
    Fixed(usize),
    /// a general point of the boundary divisor of this ray
    OnComponent(usize),
    /// a point of the open torus
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descent {
    Accepted(SurfaceDeltaState),
    Refused { reason: String, e_coefficient: Q },
}

impl SurfaceDeltaState {
    pub fn new(fan: Fan, coeffs: Vec<Q>, extra: Vec<ExtraComponent>) -> Result<Self> {
        fan.toric_surface_intersections()?;
        if coeffs.len() != fan.rays().len() {
            return Err(Error::Invalid(format!("{} coefficients for {} rays", coeffs.len(), fan.rays().len())));
        }
        if let Some(x) = extra.iter().find(|x| x.class.len() != fan.rays().len()) {
            return Err(Error::Invalid(format!("class of {} has the wrong length", x.label)));
        }
        let s = SurfaceDeltaState { fan, coeffs, extra, history: Vec::new() };
        s.check()?;
        Ok(s)
    }

    /// Δ equal to the whole toric boundary.
    pub fn boundary(fan: Fan) -> Result<Self> {
        let n = fan.rays().len();
        Self::new(fan, vec![q(1); n], Vec::new())
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn extra(&self) -> &[ExtraComponent] {
        &self.extra
    }

    pub fn history(&self) -> &[BlowUpRecord] {
        &self.history
    }

    fn in_bounds(c: Q) -> bool {
        c > q(0) && c <= q(1)
    }

    pub fn coefficients_in_bounds(&self) -> bool {
        self.coeffs.iter().chain(self.extra.iter().map(|x| &x.coeff)).all(|&c| Self::in_bounds(c))
    }

    /// Coefficients of Δ + K on the boundary divisors after moving the extra components there.
    fn delta_plus_k(&self) -> Vec<Q> {
        let mut c: Vec<Q> = self.coeffs.iter().map(|&a| a - q(1)).collect();
        for x in &self.extra {
            for (ci, &k) in c.iter_mut().zip(&x.class) {
                *ci += x.coeff * q(k);
            }
        }
        c
    }

    pub fn is_anticanonical(&self) -> bool {
        principal_witness(&self.fan, &self.delta_plus_k()).is_some()
    }

    pub fn check(&self) -> Result<()> {
        if !self.coefficients_in_bounds() {
            return Err(Error::Invalid("Δ has a coefficient outside (0, 1]".into()));
        }
        if !self.is_anticanonical() {
            return Err(Error::Invalid("Δ is not Q-linearly equivalent to −K".into()));
        }
        Ok(())
    }

    /// Rays whose divisor lies in ⌊Δ⌋.
    pub fn floor_rays(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] == q(1)).collect()
    }

    /// Multiplicity of Δ at the center, which is the coefficient of E in π*Δ.
    fn multiplicity(&self, c: Center) -> Result<Q> {
        Ok(match c {
            Center::Fixed(k) => {
                let cone = self.fan.cones().get(k).ok_or_else(|| Error::CenterOutside(format!("no maximal cone {k}")))?;
                cone.iter().map(|&r| self.coeffs[r]).sum()
            }
            Center::OnComponent(r) => *self.coeffs.get(r).ok_or_else(|| Error::CenterOutside(format!("no ray {r}")))?,
            Center::Interior => q(0),
        })
    }

    pub fn is_node_of_floor(&self, c: Center) -> bool {
        match c {
            Center::Fixed(k) => self.fan.cones().get(k).is_some_and(|cone| cone.iter().all(|&r| self.coeffs[r] == q(1))),
            _ => false,
        }
    }
}

/// Blows up `center` with Δ_Y = π*Δ − E; refuses centers that are not nodes of ⌊Δ⌋.
pub fn blowup_delta_descent(state: &SurfaceDeltaState, center: Center) -> Result<Descent> {
    let e = state.multiplicity(center)? - q(1);
    if !state.is_node_of_floor(center) {
        let reason = match center {
            Center::Fixed(_) if e > q(0) => "center lies on a single component of ⌊Δ⌋, a smooth point",
            Center::Fixed(_) => "center is not on the singular locus of ⌊Δ⌋",
            Center::OnComponent(r) if state.coeffs[r] == q(1) => "center is a smooth point of ⌊Δ⌋",
            _ => "center is not on ⌊Δ⌋",
        };
        return Ok(Descent::Refused { reason: reason.to_string(), e_coefficient: e });
    }
    let Center::Fixed(k) = center else { unreachable!("nodes are torus-fixed points") };
    let cone = state.fan.cones()[k].clone();
    let old = &state.fan;
    let fan = old.star_subdivision(k)?;
    let new_ray: Vec<i64> = (0..2).map(|i| cone.iter().map(|&r| old.ray(r)[i]).sum()).collect();
    let index_of = |v: &[i64]| fan.rays().iter().position(|w| w == v).expect("subdivision keeps rays");
    let n = fan.rays().len();
    let e_idx = index_of(&new_ray);
    let mut coeffs = vec![q(0); n];
    for (r, &c) in state.coeffs.iter().enumerate() {
        coeffs[index_of(old.ray(r))] = c;
    }
    coeffs[e_idx] = e;
    let extra = state
        .extra
        .iter()
        .map(|x| {
            let mut class = vec![0i64; n];
            for (r, &a) in x.class.iter().enumerate() {
                class[index_of(old.ray(r))] = a;
            }
            class[e_idx] = cone.iter().map(|&r| x.class[r]).sum();
            ExtraComponent { label: x.label.clone(), class, coeff: x.coeff }
        })
        .collect();
    let mut history = state.history.clone();
    history.push(BlowUpRecord { cone, new_ray, e_coefficient: e });
    let next = SurfaceDeltaState { fan, coeffs, extra, history };
    next.check()?;
    Ok(Descent::Accepted(next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub value: Q,
    pub expected: Q,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.value == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirzebruchLedger {
    pub n: i64,
    pub dv: i64,
    pub identities: Vec<Identity>,
}

impl HirzebruchLedger {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(Identity::holds)
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name == name)
    }
}

/// Intersection bookkeeping on F_n for Δ = Δ' + C + Δ^v with Δ^v a sum of `dv` fibres.
pub fn hirzebruch_delta_constraints(n: i64, dv: i64) -> Result<HirzebruchLedger> {
    if n < 0 {
        return Err(Error::Invalid(format!("F_{n} needs n >= 0")));
    }
    let f = fan::hirzebruch(n);
    let ix = f.toric_surface_intersections()?;
    let g = [1, 0, 0, 0];
    let c = [0, 1, 0, 0];
    let k = ix.canonical();
    let dvert: Vec<i64> = g.iter().map(|x| dv * x).collect();
    let dprime: Vec<i64> = (0..4).map(|i| -k[i] - c[i] - dvert[i]).collect();
    let kc: Vec<i64> = (0..4).map(|i| k[i] + c[i]).collect();
    let mut ids = vec![
        Identity { name: "C^2".into(), value: q(ix.dot(&c, &c)), expected: q(-n) },
        Identity { name: "G^2".into(), value: q(ix.dot(&g, &g)), expected: q(0) },
        Identity { name: "C.G".into(), value: q(ix.dot(&c, &g)), expected: q(1) },
        Identity { name: "(K+C).C".into(), value: q(ix.dot(&kc, &c)), expected: q(-2) },
        Identity { name: "Dv.C".into(), value: q(ix.dot(&dvert, &c)), expected: q(dv) },
        Identity { name: "D'.C".into(), value: q(ix.dot(&dprime, &c)), expected: q(2 - dv) },
        Identity { name: "D'.C = 0".into(), value: q(ix.dot(&dprime, &c)), expected: q(0) },
        Identity { name: "D'.G".into(), value: q(ix.dot(&dprime, &g)), expected: q(1) },
    ];
    if n == 0 {
        // −K ∼ 2G + 2C: the product of the two P^1 boundaries
        let diff: Vec<Q> = (0..4).map(|i| q(-k[i] - 2 * g[i] - 2 * c[i])).collect();
        let m = principal_witness(&f, &diff);
        let integral = m.as_ref().is_some_and(|m| m.iter().all(|x| x.is_integer()));
        ids.push(Identity { name: "-K ~ 2G + 2C".into(), value: q(integral as i64), expected: q(1) });
    }
    Ok(HirzebruchLedger { n, dv, identities: ids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn d(s: &str) -> MarkedDynkinDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        let x = d("A2:1,2");
        assert_eq!(x.rank(), 2);
        assert_eq!(x.to_string(), "A2:1,2");
        assert!("D3:1".parse::<MarkedDynkinDiagram>().is_err());
        assert!("A3:4".parse::<MarkedDynkinDiagram>().is_err());
        assert!("A9:1".parse::<MarkedDynkinDiagram>().is_err());
        assert!("E9:1".parse::<MarkedDynkinDiagram>().is_err());
        assert!("X2:1".parse::<MarkedDynkinDiagram>().is_err());
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan_matrix(DynkinType::B, 2).unwrap(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(cartan_matrix(DynkinType::C, 2).unwrap(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix(DynkinType::G, 2).unwrap(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(cartan_matrix(DynkinType::F, 4).unwrap()[1][2], -2);
        // E8: node 2 attaches to node 4
        let e8 = cartan_matrix(DynkinType::E, 8).unwrap();
        assert_eq!(e8[1][3], -1);
        assert_eq!(e8[1][2], 0);
        assert_eq!(e8[0][2], -1);
    }

    #[test]
    fn root_counts() {
        for n in 1..=8 {
            assert_eq!(positive_roots(DynkinType::A, n).unwrap().len(), n * (n + 1) / 2);
        }
        for n in 2..=8 {
            assert_eq!(positive_roots(DynkinType::B, n).unwrap().len(), n * n);
            assert_eq!(positive_roots(DynkinType::C, n).unwrap().len(), n * n);
        }
        for n in 4..=8 {
            assert_eq!(positive_roots(DynkinType::D, n).unwrap().len(), n * (n - 1));
        }
        let e: Vec<usize> = (6..=8).map(|n| positive_roots(DynkinType::E, n).unwrap().len()).collect();
        assert_eq!(e, vec![36, 63, 120]);
        assert_eq!(positive_roots(DynkinType::F, 4).unwrap().len(), 24);
        assert_eq!(positive_roots(DynkinType::G, 2).unwrap().len(), 6);
    }

    #[test]
    fn highest_root_of_e8() {
        let r = positive_roots(DynkinType::E, 8).unwrap();
        assert_eq!(r.last().unwrap(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_g_mod_p(&d("A3:1")).unwrap(), 3);
        assert_eq!(dim_g_mod_p(&d("C3:1")).unwrap(), 5);
        assert_eq!(dim_g_mod_p(&d("A2:1,2")).unwrap(), 3);
        assert_eq!(dim_g_mod_p(&d("A3:2")).unwrap(), 4);
        assert_eq!(dim_g_mod_p(&d("B3:1")).unwrap(), 5);
        assert_eq!(dim_g_mod_p(&d("E6:1")).unwrap(), 16);
        assert_eq!(dim_g_mod_p(&d("E7:7")).unwrap(), 27);
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(is_projective_space(&d("A4:4")).unwrap(), Some(4));
        assert_eq!(is_projective_space(&d("C4:1")).unwrap(), Some(7));
        assert_eq!(is_projective_space(&d("B3:1")).unwrap(), None);
        assert!(is_projective_space(&d("A2:1,2")).is_err());
    }

    #[test]
    fn parabolic_verdicts() {
        assert_eq!(classify_max_parabolic_quotients(&d("A3:1")).unwrap(), ParabolicVerdict::ProjSpace(3));
        assert_eq!(classify_max_parabolic_quotients(&d("A2:1,2")).unwrap(), ParabolicVerdict::Incidence(2));
        assert!(matches!(classify_max_parabolic_quotients(&d("B2:2")).unwrap(), ParabolicVerdict::Neither(_)));
        assert!(matches!(classify_max_parabolic_quotients(&d("A3:1,2")).unwrap(), ParabolicVerdict::Neither(_)));
        assert!(classify_max_parabolic_quotients(&d("A3:")).is_err());
    }

    #[test]
    fn fano_chi() {
        assert_eq!(FanoInvariants::new("1.17", 1, 64, 0).unwrap().chi_tangent(), 15);
        assert_eq!(FanoInvariants::new("1.1", 1, 2, 104).unwrap().chi_tangent(), -68);
        assert_eq!(FanoInvariants::new("1.15", 1, 54, 0).unwrap().chi_tangent(), 10);
        assert!(FanoInvariants::new("x", 1, 64, 3).is_err());
        assert!(FanoInvariants::new("x", 1, 0, 0).is_err());
    }

    #[test]
    fn csv_errors_name_the_line() {
        let text = "# header comment\nid,rho,minusK3,b3\n1.1,1,2,104\n1.2,1,x,60\n";
        match parse_fano_csv(text) {
            Err(Error::Table { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("minusK3"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_fano_csv("id,rho\n1.1,1\n"), Err(Error::Table { line: 1, .. })));
        assert!(matches!(parse_fano_csv("id,rho,minusK3,b3\n1.1,1,2,103\n"), Err(Error::Table { line: 2, .. })));
    }

    #[test]
    fn bundled_table() {
        let t = mori_mukai_table().unwrap();
        assert_eq!(t.len(), 17 + 36 + 31 + 12 + 8);
        let s = fano_rigidity_screen(&t);
        assert_eq!(s.row("1.17").unwrap().chi, 15);
        assert_eq!(s.row("2.27").unwrap().verdict, EXTERNAL);
        assert_eq!(s.row("1.1").unwrap().verdict, NON_RIGID);
        assert_eq!(s.partition["other"], vec!["2.27", "2.32"]);
    }

    fn fixed_cone(f: &Fan, a: usize, b: usize) -> usize {
        f.cones().iter().position(|c| c.contains(&a) && c.contains(&b)).unwrap()
    }

    #[test]
    fn p2_corner_gives_f1() {
        let s = SurfaceDeltaState::boundary(fan::projective_space(2).unwrap()).unwrap();
        let Descent::Accepted(t) = blowup_delta_descent(&s, Center::Fixed(0)).unwrap() else { panic!() };
        assert_eq!(t.fan().rays().len(), 4);
        assert!(t.coeffs().iter().all(|&c| c == q(1)));
        assert_eq!(t.history()[0].e_coefficient, q(1));
        let ix = t.fan().toric_surface_intersections().unwrap();
        let mut selfs: Vec<i64> = (0..4).map(|i| ix.self_intersection(i)).collect();
        selfs.sort();
        assert_eq!(selfs, vec![-1, 0, 0, 1]);
    }

    #[test]
    fn smooth_point_is_refused() {
        let s = SurfaceDeltaState::boundary(fan::projective_space(2).unwrap()).unwrap();
        let r = blowup_delta_descent(&s, Center::OnComponent(0)).unwrap();
        assert!(matches!(r, Descent::Refused { e_coefficient, .. } if e_coefficient == q(0)));
        assert!(matches!(blowup_delta_descent(&s, Center::Interior).unwrap(), Descent::Refused { .. }));
        assert!(matches!(blowup_delta_descent(&s, Center::Fixed(7)), Err(Error::CenterOutside(_))));
    }

    #[test]
    fn f0_corner_gives_five_rays() {
        let f0 = fan::hirzebruch(0);
        let s = SurfaceDeltaState::boundary(f0.clone()).unwrap();
        let Descent::Accepted(t) = blowup_delta_descent(&s, Center::Fixed(fixed_cone(&f0, 0, 1))).unwrap() else { panic!() };
        assert_eq!(t.fan().rays().len(), 5);
        assert!(t.is_anticanonical());
    }

    #[test]
    fn partial_boundary_with_extra_component() {
        // P^2 with Δ = D0 + D1 + D2/2 + L/2, L a general line
        let p2 = fan::projective_space(2).unwrap();
        let half = Ratio::new(1, 2);
        let bad = SurfaceDeltaState::new(p2.clone(), vec![q(1), q(1), half], vec![]);
        assert!(bad.is_err());
        let line = ExtraComponent { label: "L".into(), class: vec![0, 0, 1], coeff: half };
        let mixed = SurfaceDeltaState::new(p2.clone(), vec![q(1), q(1), half], vec![line]).unwrap();
        // the corner of D0 and D2 meets ⌊Δ⌋ only along D0
        let k = fixed_cone(&p2, 0, 2);
        assert!(matches!(blowup_delta_descent(&mixed, Center::Fixed(k)).unwrap(), Descent::Refused { .. }));
        let k = fixed_cone(&p2, 0, 1);
        let Descent::Accepted(t) = blowup_delta_descent(&mixed, Center::Fixed(k)).unwrap() else { panic!() };
        assert_eq!(t.extra()[0].class.iter().sum::<i64>(), 1);
        assert!(t.check().is_ok());
    }

    #[test]
    fn hirzebruch_identities() {
        for n in 0..=4 {
            let l = hirzebruch_delta_constraints(n, 2).unwrap();
            assert!(l.holds(), "{l:?}");
            assert_eq!(l.get("D'.C").unwrap().value, q(0));
            assert_eq!(l.get("D'.G").unwrap().value, q(1));
        }
        assert!(hirzebruch_delta_constraints(0, 2).unwrap().get("-K ~ 2G + 2C").is_some());
        assert!(!hirzebruch_delta_constraints(2, 3).unwrap().holds());
    }
}
