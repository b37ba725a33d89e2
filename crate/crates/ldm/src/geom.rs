//! Exact projective geometry in PG(2) and PG(3): collinearity, join/meet,
//! projection to a plane, and curve fitting by null spaces.
//!
//! Points and lines are kept in a canonical form (last nonzero coordinate
//! scaled to 1), so structural equality decides projective equality.

use crate::field::{Field, FieldElement};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("elements from different fields")]
    MixedFields,
    #[error("coincident arguments")]
    CoincidentArguments,
    #[error("need at least two distinct lines")]
    FewerThanTwoDistinct,
    #[error("projection center lies on the target plane")]
    CenterOnPlane,
    #[error("cannot project the center itself")]
    ProjectingCenter,
    #[error("conic irreducibility is undefined in characteristic 2")]
    CharTwoUnsupported,
    #[error("unexpected dimension")]
    BadDimension,
}

/// A point of PG(2) or PG(3) in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<FieldElement>,
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})", self.coords)
    }
}

/// A line of PG(2) as a canonical covector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coords: Vec<FieldElement>,
}

impl std::fmt::Debug for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:?}]", self.coords)
    }
}

fn canonicalize(mut coords: Vec<FieldElement>) -> Result<Vec<FieldElement>, GeomError> {
    let field = coords[0].field().clone();
    if coords.iter().any(|c| *c.field() != field) {
        return Err(GeomError::MixedFields);
    }
    let last_nonzero = coords.iter().rposition(|c| !c.is_zero());
    let Some(idx) = last_nonzero else {
        return Err(GeomError::ZeroVector);
    };
    let scale = coords[idx].inv().expect("nonzero");
    for c in coords.iter_mut() {
        *c = c.mul(&scale);
    }
    Ok(coords)
}

impl Point {
    /// Canonical representative of the class of `coords` (3 or 4 entries).
    pub fn new(coords: Vec<FieldElement>) -> Result<Point, GeomError> {
        if coords.len() != 3 && coords.len() != 4 {
            return Err(GeomError::BadDimension);
        }
        Ok(Point {
            coords: canonicalize(coords)?,
        })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn on_line(&self, l: &Line) -> bool {
        dot(&self.coords, &l.coords).is_zero()
    }
}

impl Line {
    pub fn new(coords: Vec<FieldElement>) -> Result<Line, GeomError> {
        if coords.len() != 3 {
            return Err(GeomError::BadDimension);
        }
        Ok(Line {
            coords: canonicalize(coords)?,
        })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = a[0].mul(&b[0]);
    for (x, y) in a.iter().zip(b).skip(1) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn det3_rows(r: [&[FieldElement]; 3]) -> FieldElement {
    let m = |i: usize, j: usize| &r[i][j];
    let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
    let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
    let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
    t1.sub(&t2).add(&t3)
}

fn check_same_field(pts: &[&Point]) -> Result<(), GeomError> {
    let f = pts[0].field();
    if pts.iter().any(|p| p.field() != f) {
        return Err(GeomError::MixedFields);
    }
    Ok(())
}

/// True iff the 3x3 coordinate determinant vanishes.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> Result<bool, GeomError> {
    check_same_field(&[p, q, r])?;
    if p.dim() != 2 || q.dim() != 2 || r.dim() != 2 {
        return Err(GeomError::BadDimension);
    }
    Ok(det3_rows([p.coords(), q.coords(), r.coords()]).is_zero())
}

/// Rank <= 2 test for three points of PG(3): all four 3x3 minors vanish.
pub fn collinear_pg3(p: &Point, q: &Point, r: &Point) -> Result<bool, GeomError> {
    check_same_field(&[p, q, r])?;
    if p.dim() != 3 || q.dim() != 3 || r.dim() != 3 {
        return Err(GeomError::BadDimension);
    }
    for drop in 0..4 {
        let take = |row: &Point| -> Vec<FieldElement> {
            row.coords()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, c)| c.clone())
                .collect()
        };
        let (a, b, c) = (take(p), take(q), take(r));
        if !det3_rows([&a, &b, &c]).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cross(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    vec![
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn join(p: &Point, q: &Point) -> Result<Line, GeomError> {
    check_same_field(&[p, q])?;
    if p == q {
        return Err(GeomError::CoincidentArguments);
    }
    Line::new(cross(p.coords(), q.coords()))
}

pub fn meet(l: &Line, m: &Line) -> Result<Point, GeomError> {
    if l == m {
        return Err(GeomError::CoincidentArguments);
    }
    Point::new(cross(l.coords(), m.coords()))
}

/// True iff all lines pass through the meet of the first two distinct ones.
pub fn are_concurrent(lines: &[Line]) -> Result<bool, GeomError> {
    let mut distinct: Vec<&Line> = Vec::new();
    for l in lines {
        if !distinct.contains(&l) {
            distinct.push(l);
        }
    }
    if distinct.len() < 2 {
        return Err(GeomError::FewerThanTwoDistinct);
    }
    let common = meet(distinct[0], distinct[1])?;
    Ok(distinct.iter().all(|l| common.on_line(l)))
}

/// A plane of PG(3): a covector plus the deterministic point basis spanning
/// it (reduced solution basis of the plane equation, leftmost pivot).
#[derive(Clone, Debug)]
pub struct Plane {
    covector: Vec<FieldElement>,
    basis: [Vec<FieldElement>; 3],
}

impl Plane {
    pub fn new(covector: Vec<FieldElement>) -> Result<Plane, GeomError> {
        if covector.len() != 4 {
            return Err(GeomError::BadDimension);
        }
        let covector = canonicalize(covector)?;
        let field = covector[0].field().clone();
        let ns = nullspace(std::slice::from_ref(&covector), 4, &field);
        assert_eq!(ns.len(), 3);
        let basis = [ns[0].clone(), ns[1].clone(), ns[2].clone()];
        Ok(Plane { covector, basis })
    }

    pub fn contains(&self, p: &Point) -> bool {
        dot(&self.covector, p.coords()).is_zero()
    }
}

/// Central projection of `q` from `center` onto `target`, expressed in the
/// target's point basis.
pub fn project_to_plane(center: &Point, target: &Plane, q: &Point) -> Result<Point, GeomError> {
    check_same_field(&[center, q])?;
    if center.dim() != 3 || q.dim() != 3 {
        return Err(GeomError::BadDimension);
    }
    if target.contains(center) {
        return Err(GeomError::CenterOnPlane);
    }
    if center == q {
        return Err(GeomError::ProjectingCenter);
    }
    // r = (pi.center) q - (pi.q) center lies on the plane and on the line cq.
    let s = dot(&target.covector, center.coords());
    let t = dot(&target.covector, q.coords());
    let r: Vec<FieldElement> = (0..4)
        .map(|i| s.mul(&q.coords()[i]).sub(&t.mul(&center.coords()[i])))
        .collect();
    // Solve r = sum lambda_i basis_i (4 equations, 3 unknowns, consistent).
    let field = q.field().clone();
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(4);
    for (eq, r_eq) in r.iter().enumerate() {
        let mut row: Vec<FieldElement> = (0..3).map(|b| target.basis[b][eq].clone()).collect();
        row.push(r_eq.clone());
        rows.push(row);
    }
    let sol = solve_unique(rows, 3, &field).expect("plane basis spans the projected point");
    Point::new(sol)
}

/// Reduced row echelon form in place; returns pivot column list.
fn rref(rows: &mut [Vec<FieldElement>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inv().expect("pivot nonzero");
        for c in rows[r].iter_mut() {
            *c = c.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in 0..rows[r].len() {
                    let t = factor.mul(&rows[r][c]);
                    rows[i][c] = rows[i][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Null-space basis of the homogeneous system given by `rows` (each of
/// length `width`). One vector per free column, leftmost pivots, each
/// vector normalized so its first nonzero entry is 1.
pub fn nullspace(
    rows: &[Vec<FieldElement>],
    width: usize,
    field: &Field,
) -> Vec<Vec<FieldElement>> {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let pivots = rref(&mut m, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![field.zero(); width];
        v[f] = field.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = m[ri][f].neg();
        }
        // normalize first nonzero entry to 1
        let first = v.iter().position(|c| !c.is_zero()).expect("unit present");
        let inv = v[first].inv().expect("nonzero");
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
        basis.push(v);
    }
    basis
}

/// Solve an inhomogeneous system with a unique solution; rows carry the
/// right-hand side in their last entry.
fn solve_unique(
    mut rows: Vec<Vec<FieldElement>>,
    unknowns: usize,
    field: &Field,
) -> Option<Vec<FieldElement>> {
    let pivots = rref(&mut rows, unknowns);
    if pivots.len() != unknowns {
        return None;
    }
    // consistency: no row of the form (0..0 | nonzero)
    for row in &rows {
        if row[..unknowns].iter().all(|c| c.is_zero()) && !row[unknowns].is_zero() {
            return None;
        }
    }
    let mut sol = vec![field.zero(); unknowns];
    for (ri, &pc) in pivots.iter().enumerate() {
        sol[pc] = rows[ri][unknowns].clone();
    }
    Some(sol)
}

/// Exponent triples (a,b,c), a+b+c = degree, in graded-lexicographic order
/// with X1 > X2 > X3.
pub fn monomials(degree: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push((a, b, degree - a - b));
        }
    }
    out
}

/// Coefficients of a plane curve of degree 2 or 3, first nonzero entry
/// normalized to 1, indexed by [`monomials`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Curve {
    degree: usize,
    coeffs: Vec<FieldElement>,
}

impl Curve {
    pub fn new(degree: usize, coeffs: Vec<FieldElement>) -> Result<Curve, GeomError> {
        assert!(degree == 2 || degree == 3);
        assert_eq!(coeffs.len(), monomials(degree).len());
        let field = coeffs[0].field().clone();
        if coeffs.iter().any(|c| *c.field() != field) {
            return Err(GeomError::MixedFields);
        }
        let first = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(GeomError::ZeroVector)?;
        let inv = coeffs[first].inv().expect("nonzero");
        let coeffs = coeffs.iter().map(|c| c.mul(&inv)).collect();
        Ok(Curve { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The form evaluated at the point's canonical coordinates.
    pub fn evaluate(&self, p: &Point) -> FieldElement {
        let field = p.field();
        let mut acc = field.zero();
        for ((a, b, c), coef) in monomials(self.degree).into_iter().zip(&self.coeffs) {
            if coef.is_zero() {
                continue;
            }
            let term = p.coords()[0]
                .pow(a as u64)
                .mul(&p.coords()[1].pow(b as u64))
                .mul(&p.coords()[2].pow(c as u64));
            acc = acc.add(&coef.mul(&term));
        }
        acc
    }

    pub fn vanishes_on(&self, pts: &[Point]) -> bool {
        pts.iter().all(|p| self.evaluate(p).is_zero())
    }
}

/// Basis of the space of degree-`degree` curves through all `points`,
/// possibly empty.
pub fn fit_curve(points: &[Point], degree: usize) -> Vec<Curve> {
    assert!(!points.is_empty());
    let field = points[0].field().clone();
    let monos = monomials(degree);
    let rows: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|&(a, b, c)| {
                    p.coords()[0]
                        .pow(a as u64)
                        .mul(&p.coords()[1].pow(b as u64))
                        .mul(&p.coords()[2].pow(c as u64))
                })
                .collect()
        })
        .collect();
    nullspace(&rows, monos.len(), &field)
        .into_iter()
        .map(|v| Curve::new(degree, v).expect("nullspace vectors are nonzero"))
        .collect()
}

/// Rank-3 test on the symmetric matrix of a conic; rejects characteristic 2.
pub fn conic_is_irreducible(c: &Curve) -> Result<bool, GeomError> {
    assert_eq!(c.degree, 2);
    let field = c.coeffs[0].field().clone();
    if field.characteristic() == 2 {
        return Err(GeomError::CharTwoUnsupported);
    }
    // monomial order: X1^2, X1X2, X1X3, X2^2, X2X3, X3^2
    let half = field.from_int(2).inv().expect("char != 2");
    let a = |i: usize| c.coeffs[i].clone();
    let m = [
        [a(0), a(1).mul(&half), a(2).mul(&half)],
        [a(1).mul(&half), a(3), a(4).mul(&half)],
        [a(2).mul(&half), a(4).mul(&half), a(5)],
    ];
    let det = det3_rows([&m[0], &m[1], &m[2]]);
    Ok(!det.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn pt(f: &Field, v: [i64; 3]) -> Point {
        Point::new(v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn normalization() {
        let f = Field::prime(19).unwrap();
        assert_eq!(pt(&f, [2, 4, 2]), pt(&f, [1, 2, 1]));
        assert_eq!(pt(&f, [0, 0, 5]), pt(&f, [0, 0, 1]));
        let zero: Vec<_> = (0..3).map(|_| f.zero()).collect();
        assert_eq!(Point::new(zero).unwrap_err(), GeomError::ZeroVector);
    }

    #[test]
    fn collinearity() {
        let f = Field::prime(7).unwrap();
        let e1 = pt(&f, [1, 0, 0]);
        let e2 = pt(&f, [0, 1, 0]);
        let e3 = pt(&f, [0, 0, 1]);
        assert!(!collinear(&e1, &e2, &e3).unwrap());
        // f1(2), f2(3), f3(6) from the triangle maps with z = xy
        let a = pt(&f, [0, 1, 2]);
        let b = pt(&f, [3, 0, 1]);
        let c = pt(&f, [6, 6, 0]);
        assert!(collinear(&a, &b, &c).unwrap());
        assert!(collinear(&a, &a, &c).unwrap());
    }

    #[test]
    fn collinearity_pg3() {
        let f = Field::prime(11).unwrap();
        let mk = |v: [i64; 4]| Point::new(v.iter().map(|&x| f.from_int(x)).collect()).unwrap();
        let p = mk([2, 0, 1, 0]);
        let q = mk([1, 3, 0, 0]);
        let r = mk([0, -6, 1, 0]);
        assert!(collinear_pg3(&p, &q, &r).unwrap());
        let e = |i: usize| {
            let mut v = [0i64; 4];
            v[i] = 1;
            mk(v)
        };
        assert!(!collinear_pg3(&e(0), &e(1), &e(2)).unwrap());
        assert!(collinear_pg3(&p, &p, &q).unwrap());
    }

    #[test]
    fn join_meet() {
        let f = Field::prime(19).unwrap();
        let l = join(&pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0])).unwrap();
        assert_eq!(l.coords()[2], f.one());
        assert!(l.coords()[0].is_zero() && l.coords()[1].is_zero());
        let l1 = Line::new(vec![f.one(), f.zero(), f.zero()]).unwrap();
        let l2 = Line::new(vec![f.zero(), f.one(), f.zero()]).unwrap();
        let p = meet(&l1, &l2).unwrap();
        assert_eq!(p, pt(&f, [0, 0, 1]));
        assert_eq!(join(&p, &p).unwrap_err(), GeomError::CoincidentArguments);
    }

    #[test]
    fn join_lies_on_both() {
        let f = Field::prime(7).unwrap();
        // chord rule on the conic: f2(2), f2(3) joined passes through f1(6)
        let a = pt(&f, [2, 4, 1]); // (2, 1/2, 1)
        let b = pt(&f, [3, 5, 1]); // (3, 1/3, 1)
        let l = join(&a, &b).unwrap();
        assert!(a.on_line(&l) && b.on_line(&l));
        let c = pt(&f, [6, -1, 0]);
        assert!(c.on_line(&l));
    }

    #[test]
    fn concurrency() {
        let f = Field::prime(19).unwrap();
        let mk = |v: [i64; 3]| Line::new(v.iter().map(|&x| f.from_int(x)).collect()).unwrap();
        assert!(are_concurrent(&[mk([1, 0, 0]), mk([0, 1, 0]), mk([1, 1, 0])]).unwrap());
        assert!(!are_concurrent(&[mk([1, 0, 0]), mk([0, 1, 0]), mk([0, 0, 1])]).unwrap());
        assert_eq!(
            are_concurrent(&[mk([1, 0, 0]), mk([1, 0, 0])]).unwrap_err(),
            GeomError::FewerThanTwoDistinct
        );
    }

    #[test]
    fn projection_drops_last_coordinate() {
        let f = Field::prime(11).unwrap();
        let mk = |v: [i64; 4]| Point::new(v.iter().map(|&x| f.from_int(x)).collect()).unwrap();
        let center = mk([0, 0, 0, 1]);
        let plane = Plane::new(vec![f.zero(), f.zero(), f.zero(), f.one()]).unwrap();
        let q = mk([3, 5, 7, 2]);
        let img = project_to_plane(&center, &plane, &q).unwrap();
        assert_eq!(img, pt(&f, [3, 5, 7]));
        // a point already on the plane is fixed
        let q2 = mk([4, 1, 6, 0]);
        let img2 = project_to_plane(&center, &plane, &q2).unwrap();
        assert_eq!(img2, pt(&f, [4, 1, 6]));
        assert_eq!(
            project_to_plane(&mk([1, 0, 0, 0]), &plane, &q).unwrap_err(),
            GeomError::CenterOnPlane
        );
    }

    #[test]
    fn curve_fitting_cubic_through_nine() {
        let f = Field::prime(101).unwrap();
        // nine points of (t, t^3, 1): no conic passes through them, and the
        // cubic X1^3 - X2X3^2 is the unique one up to scale
        let pts: Vec<Point> = (1..=9).map(|i| pt(&f, [i, (i * i * i) % 101, 1])).collect();
        let basis = fit_curve(&pts, 3);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].vanishes_on(&pts));
    }

    #[test]
    fn conic_irreducibility() {
        let f = Field::prime(19).unwrap();
        let z = || f.zero();
        // X1X2 - X3^2
        let c = Curve::new(2, vec![z(), f.one(), z(), z(), z(), f.from_int(-1)]).unwrap();
        assert!(conic_is_irreducible(&c).unwrap());
        assert!(c.evaluate(&pt(&f, [2, 10, 1])).is_zero()); // (u, 1/u, 1), u=2
        assert_eq!(c.evaluate(&pt(&f, [1, 1, 0])), f.one());
        // X1X2: two lines
        let c2 = Curve::new(2, vec![z(), f.one(), z(), z(), z(), z()]).unwrap();
        assert!(!conic_is_irreducible(&c2).unwrap());
        // X1^2: double line
        let c3 = Curve::new(2, vec![f.one(), z(), z(), z(), z(), z()]).unwrap();
        assert!(!conic_is_irreducible(&c3).unwrap());
    }

    #[test]
    fn monomial_order_matches_contract() {
        assert_eq!(
            monomials(3),
            vec![
                (3, 0, 0),
                (2, 1, 0),
                (2, 0, 1),
                (1, 2, 0),
                (1, 1, 1),
                (1, 0, 2),
                (0, 3, 0),
                (0, 2, 1),
                (0, 1, 2),
                (0, 0, 3)
            ]
        );
        assert_eq!(monomials(2).len(), 6);
    }
}
