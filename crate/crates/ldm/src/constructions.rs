//! Builders for the four explicit families: triangle type, conic-line
//! type, tetrahedron type (spatial dual 3-net projected from a seeded
//! center), and the sporadic order-18 configuration, plus the completely
//! reducible polynomial triple attached to the triangle family.

use std::collections::BTreeMap;

use crate::field::{Field, FieldElement, FieldError, FieldKind};
use crate::geom::{project_to_plane, GeomError, Plane, Point};
use crate::loops::{biextension, cyclic, dihedral_geom, LoopError, MultTable};
use crate::multinet::{LabeledMultinet, MultinetError};
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Multinet(#[from] MultinetError),
    #[error("field characteristic {0} is too small for order {1}")]
    CharacteristicTooSmall(u64, usize),
    #[error("parameter k={0} out of range for m={1}")]
    BadK(usize, usize),
    #[error("no admissible projection center found in {0} attempts")]
    SamplingExhausted(usize),
    #[error("no latin completion of the geometric partial square was found")]
    CompletionFailed,
}

fn require_char(f: &Field, n: usize) -> Result<(), ConstructError> {
    let p = f.characteristic();
    if p != 0 && p <= n as u64 {
        return Err(ConstructError::CharacteristicTooSmall(p, n));
    }
    Ok(())
}

/// Triangle-type light dual multinet of order n = 3m, labeled by Z/n.
///
/// The components live on the coordinate triangle via the base maps
/// f1(x) = (0,1,x), f2(y) = (y,0,1), f3(z) = (z,-1,0); label e with
/// residue r = e mod 3 selects the map and the exponent of ξ.
pub fn build_triangle(m: usize, f: &Field) -> Result<LabeledMultinet, ConstructError> {
    let n = 3 * m;
    require_char(f, n)?;
    let xi = f.root_of_unity(n as u64)?;
    let pw = |e: i64| {
        let e = e.rem_euclid(n as i64) as u64;
        xi.pow(e)
    };
    let f1 = |x: FieldElement| Point::new(vec![f.zero(), f.one(), x]).unwrap();
    let f2 = |y: FieldElement| Point::new(vec![y, f.zero(), f.one()]).unwrap();
    let f3 = |z: FieldElement| Point::new(vec![z, f.one().neg(), f.zero()]).unwrap();
    let mut comps: [Vec<Point>; 3] = [vec![], vec![], vec![]];
    for e in 0..n as i64 {
        comps[0].push(match e % 3 {
            0 => f1(pw(e)),
            1 => f2(pw(e - 2)),
            _ => f3(pw(4 - e)),
        });
        comps[1].push(match e % 3 {
            0 => f1(pw(e + 1)),
            1 => f2(pw(e - 1)),
            _ => f3(pw(3 - e)),
        });
        comps[2].push(match e % 3 {
            0 => f1(pw(5 - e)),
            1 => f3(pw(e - 1)),
            _ => f2(pw(3 - e)),
        });
    }
    let provenance = serde_json::json!({
        "construction": "triangle",
        "m": m,
    });
    Ok(LabeledMultinet::new(
        f.clone(),
        Some(cyclic(n)?),
        comps,
        provenance,
    )?)
}

/// Conic-line light dual multinet of order n = 2m labeled by the group
/// A = H ∪ H' (biextension of Z/m by the parameter k).
///
/// Base maps: f1(u) = (u,-1,0) on the line X3 = 0 and f2(u) = (u,1/u,1)
/// on the conic X1X2 = X3²; index t < m is the H part, m+t the H' part.
pub fn build_conic_line(m: usize, k: usize, f: &Field) -> Result<LabeledMultinet, ConstructError> {
    let n = 2 * m;
    require_char(f, n)?;
    if k >= m {
        return Err(ConstructError::BadK(k, m));
    }
    let xi = f.root_of_unity(3 * m as u64)?;
    let pw = |e: i64| {
        let e = e.rem_euclid(3 * m as i64) as u64;
        xi.pow(e)
    };
    let f1 = |u: FieldElement| Point::new(vec![u, f.one().neg(), f.zero()]).unwrap();
    let f2 = |u: FieldElement| {
        let inv = u.inv().expect("powers of xi are nonzero");
        Point::new(vec![u, inv, f.one()]).unwrap()
    };
    let ki = k as i64;
    let mut comps: [Vec<Point>; 3] = [vec![], vec![], vec![]];
    for t in 0..m as i64 {
        comps[0].push(f1(pw(3 * t)));
        comps[1].push(f1(pw(3 * t + 1)));
        comps[2].push(f1(pw(-3 * t + 3 * ki - 1)));
    }
    for t in 0..m as i64 {
        comps[0].push(f2(pw(-3 * t)));
        comps[1].push(f2(pw(-3 * t - 1)));
        comps[2].push(f2(pw(3 * t + 1)));
    }
    let provenance = serde_json::json!({
        "construction": "conic-line",
        "m": m,
        "k": k,
    });
    Ok(LabeledMultinet::new(
        f.clone(),
        Some(biextension(m, k)?),
        comps,
        provenance,
    )?)
}

/// The spatial (PG(3)) point maps of the tetrahedron construction, indexed
/// like `dihedral_geom(m)`: t is η^t, m+t is η^t·σ.
pub fn tetrahedron_lift(m: usize, f: &Field) -> Result<[Vec<Point>; 3], ConstructError> {
    let eta = f.root_of_unity(m as u64)?;
    let pw = |t: usize| eta.pow(t as u64);
    let mk = |v: [FieldElement; 4]| Point::new(v.to_vec()).unwrap();
    let mut comps: [Vec<Point>; 3] = [vec![], vec![], vec![]];
    for t in 0..m {
        comps[0].push(mk([pw(t), f.zero(), f.one(), f.zero()]));
        comps[1].push(mk([f.one(), pw(t), f.zero(), f.zero()]));
        comps[2].push(mk([f.zero(), pw(t).neg(), f.one(), f.zero()]));
    }
    for t in 0..m {
        comps[0].push(mk([f.zero(), f.one(), f.zero(), pw(t)]));
        comps[1].push(mk([f.zero(), f.zero(), f.one(), pw(t)]));
        comps[2].push(mk([f.one(), f.zero(), f.zero(), pw(t).neg()]));
    }
    Ok(comps)
}

pub const TETRAHEDRON_MAX_ATTEMPTS: usize = 1000;

/// Tetrahedron-type light dual multinet of order n = 2m, labeled by the
/// dihedral group of order 2m: the spatial dual 3-net is projected from a
/// seeded-deterministic center on the face X_face = 0 (and on no other
/// coordinate plane), retrying until the projection verifies and shows
/// exactly one line of length m.
pub fn build_tetrahedron(
    m: usize,
    f: &Field,
    face: usize,
    seed: u64,
) -> Result<LabeledMultinet, ConstructError> {
    let n = 2 * m;
    require_char(f, n)?;
    assert!((1..=4).contains(&face), "face must be in 1..=4");
    let lift = tetrahedron_lift(m, f)?;
    let labels = dihedral_geom(m)?;
    // target plane: the first coordinate plane X_j = 0 other than the face,
    // which cannot contain the center (its j-th coordinate is nonzero)
    let j = (1..=4).find(|&j| j != face).unwrap();
    let mut cov = vec![f.zero(); 4];
    cov[j - 1] = f.one();
    let target = Plane::new(cov)?;
    let mut rng = SplitMix64::new(seed);
    let sample = |rng: &mut SplitMix64| -> FieldElement {
        match f.kind() {
            FieldKind::Prime { modulus } => f.from_residue(1 + rng.next_below(modulus - 1)),
            FieldKind::Cyclotomic { .. } => f.from_int(1 + rng.next_below(997) as i64),
        }
    };
    for _attempt in 0..TETRAHEDRON_MAX_ATTEMPTS {
        let mut coords = vec![f.zero(); 4];
        for (i, c) in coords.iter_mut().enumerate() {
            if i + 1 != face {
                *c = sample(&mut rng);
            }
        }
        let center = Point::new(coords).unwrap();
        let mut comps: [Vec<Point>; 3] = [vec![], vec![], vec![]];
        let mut ok = true;
        'proj: for (ci, comp) in lift.iter().enumerate() {
            for q in comp {
                match project_to_plane(&center, &target, q) {
                    Ok(p) => comps[ci].push(p),
                    Err(_) => {
                        ok = false;
                        break 'proj;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let provenance = serde_json::json!({
            "construction": "tetrahedron",
            "m": m,
            "face": face,
            "seed": seed,
            "center": center.coords().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        });
        let candidate = LabeledMultinet::new(f.clone(), Some(labels.clone()), comps, provenance)?;
        if !candidate.verify().pass() {
            continue;
        }
        if m > 1 {
            match candidate.length_spectrum() {
                Ok(spec) if spec.get(&m) == Some(&1) => {}
                _ => continue,
            }
        }
        return Ok(candidate);
    }
    Err(ConstructError::SamplingExhausted(TETRAHEDRON_MAX_ATTEMPTS))
}

/// Whether `build_order18` should attach a deterministically completed
/// label table or leave the multinet unlabeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    FirstFit,
    Unlabeled,
}

/// Entry codes for the order-18 matrices: 0 is the zero scalar, otherwise
/// sign(c)·ξ^(|c|−1).
const ORDER18_CODES: [[[i32; 3]; 18]; 3] = [
    [
        [0, 1, 1],
        [0, 7, 1],
        [0, 4, 1],
        [-9, 1, 0],
        [-3, 1, 0],
        [-6, 1, 0],
        [3, 0, 1],
        [9, 0, 1],
        [6, 0, 1],
        [-3, -1, 1],
        [-9, -4, 1],
        [-6, -7, 1],
        [-3, -7, 1],
        [-9, -1, 1],
        [-6, -4, 1],
        [-3, -4, 1],
        [-9, -7, 1],
        [-6, -1, 1],
    ],
    [
        [0, 3, 1],
        [0, 9, 1],
        [0, 6, 1],
        [-2, 1, 0],
        [-5, 1, 0],
        [-8, 1, 0],
        [1, 0, 1],
        [7, 0, 1],
        [4, 0, 1],
        [-1, -6, 1],
        [-7, -9, 1],
        [-4, -3, 1],
        [-1, -3, 1],
        [-7, -6, 1],
        [-4, -9, 1],
        [-1, -9, 1],
        [-7, -3, 1],
        [-4, -6, 1],
    ],
    [
        [0, 5, 1],
        [0, 2, 1],
        [0, 8, 1],
        [2, 0, 1],
        [5, 0, 1],
        [8, 0, 1],
        [-1, 1, 0],
        [-7, 1, 0],
        [-4, 1, 0],
        [-5, -5, 1],
        [-8, -2, 1],
        [-2, -8, 1],
        [-8, -8, 1],
        [-2, -5, 1],
        [-5, -2, 1],
        [-2, -2, 1],
        [-5, -8, 1],
        [-8, -5, 1],
    ],
];

/// The sporadic order-18 light dual multinet with three lines of length 3,
/// instantiated verbatim from its coordinate matrices over any field with
/// a 9th root of unity.
pub fn build_order18(f: &Field, mode: LabelMode) -> Result<LabeledMultinet, ConstructError> {
    let xi = f.root_of_unity(9)?;
    let decode = |c: i32| -> FieldElement {
        if c == 0 {
            return f.zero();
        }
        let p = xi.pow((c.unsigned_abs() - 1) as u64);
        if c < 0 {
            p.neg()
        } else {
            p
        }
    };
    let mut comps: [Vec<Point>; 3] = [vec![], vec![], vec![]];
    for (ci, rows) in ORDER18_CODES.iter().enumerate() {
        for row in rows {
            comps[ci].push(Point::new(row.iter().map(|&c| decode(c)).collect()).unwrap());
        }
    }
    let provenance = serde_json::json!({
        "construction": "order18",
        "labels": match mode {
            LabelMode::FirstFit => "first-fit",
            LabelMode::Unlabeled => "none",
        },
    });
    let unlabeled = LabeledMultinet::new(f.clone(), None, comps, provenance)?;
    match mode {
        LabelMode::Unlabeled => Ok(unlabeled),
        LabelMode::FirstFit => {
            let labels = complete_geometric_labels(&unlabeled)?;
            Ok(LabeledMultinet::new(
                f.clone(),
                Some(labels),
                unlabeled.components().clone(),
                unlabeled.provenance().clone(),
            )?)
        }
    }
}

/// Deterministic completion of the geometry into a quasigroup label table:
/// entry (i,j) must be a k with the triple collinear (so the multinet law
/// holds by construction) and the result must be latin. Row-major,
/// smallest symbol first, with backtracking under a node budget.
fn complete_geometric_labels(m: &LabeledMultinet) -> Result<MultTable, ConstructError> {
    use crate::geom::collinear;
    let n = m.order();
    let comps = m.components();
    let mut cands: Vec<Vec<Vec<usize>>> = vec![vec![vec![]; n]; n];
    for i in 0..n {
        for j in 0..n {
            cands[i][j] = (0..n)
                .filter(|&k| collinear(&comps[0][i], &comps[1][j], &comps[2][k]).unwrap_or(false))
                .collect();
            if cands[i][j].is_empty() {
                return Err(ConstructError::CompletionFailed);
            }
        }
    }
    let mut grid: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    let mut holes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if cands[i][j].len() == 1 {
                grid[i][j] = Some(cands[i][j][0]);
            } else {
                holes.push((i, j));
            }
        }
    }
    let mut budget: usize = 1_000_000;
    fn solve(
        grid: &mut Vec<Vec<Option<usize>>>,
        holes: &[(usize, usize)],
        cands: &[Vec<Vec<usize>>],
        at: usize,
        budget: &mut usize,
    ) -> bool {
        if at == holes.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let (i, j) = holes[at];
        let options: Vec<usize> = cands[i][j]
            .iter()
            .copied()
            .filter(|&s| {
                grid[i].iter().all(|e| *e != Some(s)) && grid.iter().all(|row| row[j] != Some(s))
            })
            .collect();
        for s in options {
            grid[i][j] = Some(s);
            if solve(grid, holes, cands, at + 1, budget) {
                return true;
            }
            grid[i][j] = None;
        }
        false
    }
    if !solve(&mut grid, &holes, &cands, 0, &mut budget) {
        return Err(ConstructError::CompletionFailed);
    }
    let table: Vec<Vec<usize>> = grid
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.unwrap()).collect())
        .collect();
    let names = (1..=n).map(|i| i.to_string()).collect();
    Ok(MultTable::validate(names, table)?)
}

/// A homogeneous ternary form with exact coefficients, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    degree: usize,
    coeffs: BTreeMap<(usize, usize, usize), FieldElement>,
}

impl TernaryForm {
    pub fn zero(degree: usize) -> TernaryForm {
        TernaryForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(degree: usize, expo: (usize, usize, usize), c: FieldElement) -> TernaryForm {
        assert_eq!(expo.0 + expo.1 + expo.2, degree);
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(expo, c);
        }
        TernaryForm { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize, usize), FieldElement> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, rhs.degree);
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            let entry = match coeffs.remove(e) {
                Some(old) => old.add(c),
                None => c.clone(),
            };
            if !entry.is_zero() {
                coeffs.insert(*e, entry);
            }
        }
        TernaryForm {
            degree: self.degree,
            coeffs,
        }
    }

    pub fn mul(&self, rhs: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree + rhs.degree);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
                let term = ca.mul(cb);
                let entry = match out.coeffs.remove(&e) {
                    Some(old) => old.add(&term),
                    None => term,
                };
                if !entry.is_zero() {
                    out.coeffs.insert(e, entry);
                }
            }
        }
        out
    }

    pub fn evaluate(&self, v: &[FieldElement; 3]) -> FieldElement {
        let field = v[0].field();
        let mut acc = field.zero();
        for (&(a, b, c), coef) in &self.coeffs {
            let term = v[0]
                .pow(a as u64)
                .mul(&v[1].pow(b as u64))
                .mul(&v[2].pow(c as u64));
            acc = acc.add(&coef.mul(&term));
        }
        acc
    }
}

/// The three completely reducible degree-3m forms of the triangle family;
/// their sum is identically zero, which the caller can (and tests do)
/// confirm coefficient by coefficient.
pub fn triangle_pencil_polynomials(
    m: usize,
    f: &Field,
) -> Result<(TernaryForm, TernaryForm, TernaryForm), ConstructError> {
    let w = f.root_of_unity(3)?;
    let w2 = w.mul(&w);
    // binomial u^m + c·v^m in the variables picked by index
    let bin = |u: usize, v: usize, c: FieldElement| -> TernaryForm {
        let expo = |var: usize| -> (usize, usize, usize) {
            match var {
                0 => (m, 0, 0),
                1 => (0, m, 0),
                _ => (0, 0, m),
            }
        };
        TernaryForm::monomial(m, expo(u), f.one()).add(&TernaryForm::monomial(m, expo(v), c))
    };
    let (x, y, z) = (0, 1, 2);
    let f1 = bin(x, y, f.one().neg())
        .mul(&bin(z, x, w2.neg()))
        .mul(&bin(y, z, w.neg()));
    let f2 = bin(x, y, w.neg())
        .mul(&bin(z, x, f.one().neg()))
        .mul(&bin(y, z, w2.neg()));
    let f3 = bin(x, y, w2.neg())
        .mul(&bin(z, x, w.neg()))
        .mul(&bin(y, z, f.one().neg()));
    Ok((f1, f2, f3))
}
