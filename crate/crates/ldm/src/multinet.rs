//! The central object: a labeled light dual multinet with verification,
//! line enumeration, length spectra, relabeling, submultinets,
//! classification, algebraicity, and the group-labelability obstruction.

use std::collections::{BTreeMap, BTreeSet};

use crate::field::Field;
use crate::field::FieldElement;
use crate::geom::{
    are_concurrent, collinear, conic_is_irreducible, fit_curve, join, Curve, GeomError, Line, Point,
};
use crate::loops::{row_quotient_group, LoopError, MultTable, PartialSquare, Side};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MultinetError {
    #[error("component sizes disagree with the label order")]
    SizeMismatch,
    #[error("multinet carries no label table")]
    NoLabels,
    #[error("label {0} does not label a point of the chosen line")]
    LabelNotOnLine(usize),
    #[error("the given element set is not a subgroup")]
    NotASubgroup,
    #[error("labels do not form a group")]
    NotAGroupLabel,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// Three labeled components plus field context and provenance.
#[derive(Debug, Clone)]
pub struct LabeledMultinet {
    field: Field,
    labels: Option<MultTable>,
    components: [Vec<Point>; 3],
    provenance: serde_json::Value,
}

/// A belonging line with the label subsets of the three components.
#[derive(Debug, Clone)]
pub struct LineRecord {
    pub line: Line,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub s3: Vec<usize>,
    pub length: usize,
}

/// Outcome of the three structural checks.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub injective: bool,
    pub injective_witness: Option<(usize, usize, usize)>,
    pub disjoint: bool,
    pub disjoint_witness: Option<(usize, usize)>,
    pub law: bool,
    pub law_witness: Option<(usize, usize)>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.injective && self.disjoint && self.law
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ContainedInLine,
    Triangle,
    Pencil,
    ConicLine,
    Tetrahedron,
    AlgebraicOther,
    Unclassified,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ContainedInLine => "CONTAINED_IN_LINE",
            Verdict::Triangle => "TRIANGLE",
            Verdict::Pencil => "PENCIL",
            Verdict::ConicLine => "CONIC_LINE",
            Verdict::Tetrahedron => "TETRAHEDRON",
            Verdict::AlgebraicOther => "ALGEBRAIC_OTHER",
            Verdict::Unclassified => "UNCLASSIFIED",
        }
    }
}

/// Verdict plus re-verified witness data.
#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub lines: Vec<Line>,
    pub conic: Option<Curve>,
    pub cubic: Option<Curve>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    Obstructed(usize),
    Inconclusive,
}

#[derive(Clone)]
struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> BitSet {
        BitSet {
            blocks: vec![0; n.div_ceil(64)],
        }
    }
    fn set(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }
    fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }
}

impl LabeledMultinet {
    pub fn new(
        field: Field,
        labels: Option<MultTable>,
        components: [Vec<Point>; 3],
        provenance: serde_json::Value,
    ) -> Result<LabeledMultinet, MultinetError> {
        let n = components[0].len();
        if n == 0
            || components.iter().any(|c| c.len() != n)
            || labels.as_ref().is_some_and(|t| t.order() != n)
        {
            return Err(MultinetError::SizeMismatch);
        }
        for c in &components {
            for p in c {
                if p.dim() != 2 || *p.field() != field {
                    return Err(MultinetError::SizeMismatch);
                }
            }
        }
        Ok(LabeledMultinet {
            field,
            labels,
            components,
            provenance,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.components[0].len()
    }

    pub fn labels(&self) -> Option<&MultTable> {
        self.labels.as_ref()
    }

    pub fn components(&self) -> &[Vec<Point>; 3] {
        &self.components
    }

    pub fn provenance(&self) -> &serde_json::Value {
        &self.provenance
    }

    /// All 3n points in component order.
    pub fn points(&self) -> Vec<&Point> {
        self.components.iter().flatten().collect()
    }

    /// Injectivity, pairwise disjointness, and the multinet law. Without a
    /// label table the law check degrades to existence: every (x,y) pair
    /// must see at least one collinear third-component point.
    pub fn verify(&self) -> VerifyReport {
        let n = self.order();
        let mut injective = true;
        let mut injective_witness = None;
        'inj: for (ci, comp) in self.components.iter().enumerate() {
            let mut seen: BTreeMap<&Point, usize> = BTreeMap::new();
            for (i, p) in comp.iter().enumerate() {
                if let Some(&j) = seen.get(p) {
                    injective = false;
                    injective_witness = Some((ci, j, i));
                    break 'inj;
                }
                seen.insert(p, i);
            }
        }
        let mut disjoint = true;
        let mut disjoint_witness = None;
        'dis: for a in 0..3 {
            for b in a + 1..3 {
                let set: BTreeSet<&Point> = self.components[a].iter().collect();
                if self.components[b].iter().any(|p| set.contains(p)) {
                    disjoint = false;
                    disjoint_witness = Some((a, b));
                    break 'dis;
                }
            }
        }
        let mut law = true;
        let mut law_witness = None;
        'law: for x in 0..n {
            for y in 0..n {
                let ok = match &self.labels {
                    Some(t) => collinear(
                        &self.components[0][x],
                        &self.components[1][y],
                        &self.components[2][t.mul(x, y)],
                    )
                    .unwrap_or(false),
                    None => (0..n).any(|z| {
                        collinear(
                            &self.components[0][x],
                            &self.components[1][y],
                            &self.components[2][z],
                        )
                        .unwrap_or(false)
                    }),
                };
                if !ok {
                    law = false;
                    law_witness = Some((x, y));
                    break 'law;
                }
            }
        }
        VerifyReport {
            injective,
            injective_witness,
            disjoint,
            disjoint_witness,
            law,
            law_witness,
        }
    }

    /// Every line meeting all three components, sorted by normalized line
    /// coordinates. Any such line holds a point of each component, hence a
    /// Λ1×Λ2 pair (the components are disjoint), so spanning those pairs is
    /// exhaustive rather than heuristic.
    pub fn belonging_lines(&self) -> Vec<LineRecord> {
        let n = self.order();
        let mut lines: BTreeSet<Line> = BTreeSet::new();
        for p in &self.components[0] {
            for q in &self.components[1] {
                if let Ok(l) = join(p, q) {
                    lines.insert(l);
                }
            }
        }
        let mut records = Vec::new();
        for line in lines {
            let member = |c: usize| -> Vec<usize> {
                (0..n)
                    .filter(|&i| self.components[c][i].on_line(&line))
                    .collect()
            };
            let (s1, s2, s3) = (member(0), member(1), member(2));
            if s3.is_empty() {
                continue;
            }
            let length = s1.len();
            records.push(LineRecord {
                line,
                s1,
                s2,
                s3,
                length,
            });
        }
        records
    }

    /// Counts of belonging lines per length, asserting the per-line size
    /// equality along the way.
    pub fn length_spectrum(&self) -> Result<BTreeMap<usize, usize>, MultinetError> {
        let mut spectrum = BTreeMap::new();
        for rec in self.belonging_lines() {
            if rec.s1.len() != rec.s2.len() || rec.s1.len() != rec.s3.len() {
                return Err(MultinetError::InvariantViolation(format!(
                    "line {:?} has label-set sizes {},{},{}",
                    rec.line,
                    rec.s1.len(),
                    rec.s2.len(),
                    rec.s3.len()
                )));
            }
            *spectrum.entry(rec.length).or_insert(0) += 1;
        }
        Ok(spectrum)
    }

    /// All four relations of the length lemma on one line, via the label
    /// table's divisions: S1·S2 ⊆ S3, S3/S2 ⊆ S1, S1\S3 ⊆ S2.
    pub fn line_relations_hold(&self, rec: &LineRecord) -> Result<bool, MultinetError> {
        let t = self.labels.as_ref().ok_or(MultinetError::NoLabels)?;
        if rec.s1.len() != rec.s2.len() || rec.s1.len() != rec.s3.len() {
            return Ok(false);
        }
        for &x in &rec.s1 {
            for &y in &rec.s2 {
                if !rec.s3.contains(&t.mul(x, y)) {
                    return Ok(false);
                }
            }
        }
        for &z in &rec.s3 {
            for &y in &rec.s2 {
                // z/y: the unique w with w·y = z
                if !rec.s1.contains(&t.divide(Side::Right, y, z)) {
                    return Ok(false);
                }
            }
        }
        for &x in &rec.s1 {
            for &z in &rec.s3 {
                // x\z: the unique w with x·w = z
                if !rec.s2.contains(&t.divide(Side::Left, x, z)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every (x,y) pair lies on exactly one belonging line iff the lengths
    /// squared sum to n² (a pair spans a unique line, so overlaps cannot
    /// occur; only existence is at stake).
    pub fn pair_coverage_ok(&self) -> bool {
        let n = self.order();
        let total: usize = self
            .belonging_lines()
            .iter()
            .map(|r| r.s1.len() * r.s2.len())
            .sum();
        total == n * n
    }

    /// True iff every line spanned by two points of different components
    /// meets each of the three components exactly once.
    pub fn is_dual_3net(&self) -> bool {
        for a in 0..3 {
            for b in a + 1..3 {
                for p in &self.components[a] {
                    for q in &self.components[b] {
                        let Ok(l) = join(p, q) else {
                            return false;
                        };
                        let counts: Vec<usize> = self
                            .components
                            .iter()
                            .map(|c| c.iter().filter(|r| r.on_line(&l)).count())
                            .collect();
                        if counts != [1, 1, 1] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Replace the labels by the principal isotope at (u,v) and reindex the
    /// first two components so the new unit u·v labels points of `rec`.
    pub fn relabel_through_line(
        &self,
        rec: &LineRecord,
        u: usize,
        v: usize,
    ) -> Result<LabeledMultinet, MultinetError> {
        let t = self.labels.as_ref().ok_or(MultinetError::NoLabels)?;
        if !rec.s1.contains(&u) {
            return Err(MultinetError::LabelNotOnLine(u));
        }
        if !rec.s2.contains(&v) {
            return Err(MultinetError::LabelNotOnLine(v));
        }
        let n = self.order();
        let new_labels = t.principal_isotope(u, v);
        let comp1: Vec<Point> = (0..n)
            .map(|x| self.components[0][t.divide(Side::Right, v, x)].clone())
            .collect();
        let comp2: Vec<Point> = (0..n)
            .map(|y| self.components[1][t.divide(Side::Left, u, y)].clone())
            .collect();
        LabeledMultinet::new(
            self.field.clone(),
            Some(new_labels),
            [comp1, comp2, self.components[2].clone()],
            self.provenance.clone(),
        )
    }

    /// The sub-multinet on the coset triple (Hg1, Hg2, Hg1g2) with the
    /// induced operation x∘y = (x·g1)(y·g2)(g1·g2)⁻¹ on H.
    pub fn coset_submultinet(
        &self,
        h: &[usize],
        g1: usize,
        g2: usize,
    ) -> Result<LabeledMultinet, MultinetError> {
        let t = self.labels.as_ref().ok_or(MultinetError::NoLabels)?;
        if !t.is_group() {
            return Err(MultinetError::NotAGroupLabel);
        }
        let e = t.identity().unwrap();
        let mut hs: Vec<usize> = h.to_vec();
        hs.sort_unstable();
        hs.dedup();
        if !hs.contains(&e)
            || hs
                .iter()
                .any(|&a| hs.iter().any(|&b| !hs.contains(&t.mul(a, b))))
        {
            return Err(MultinetError::NotASubgroup);
        }
        let k = hs.len();
        let pos = |x: usize| hs.iter().position(|&y| y == x);
        let g1g2 = t.mul(g1, g2);
        let g1g2_inv = t.divide(Side::Right, g1g2, e);
        let mut table = vec![vec![0usize; k]; k];
        for (i, &x) in hs.iter().enumerate() {
            for (j, &y) in hs.iter().enumerate() {
                let w = t.mul(t.mul(t.mul(x, g1), t.mul(y, g2)), g1g2_inv);
                table[i][j] = pos(w).ok_or(MultinetError::NotASubgroup)?;
            }
        }
        let names: Vec<String> = hs.iter().map(|&x| t.names()[x].clone()).collect();
        let labels = MultTable::validate(names, table)?;
        let comp = |c: usize, g: usize| -> Vec<Point> {
            hs.iter()
                .map(|&x| self.components[c][t.mul(x, g)].clone())
                .collect()
        };
        LabeledMultinet::new(
            self.field.clone(),
            Some(labels),
            [comp(0, g1), comp(1, g2), comp(2, g1g2)],
            self.provenance.clone(),
        )
    }

    /// Entry (i,j) is the unique k making the triple collinear, or
    /// undetermined when several k qualify (the pair sits on a long line).
    pub fn partial_latin_square(&self) -> Result<PartialSquare, MultinetError> {
        let n = self.order();
        let mut entries = vec![vec![None; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let hits: Vec<usize> = (0..n)
                    .filter(|&k| {
                        collinear(
                            &self.components[0][i],
                            &self.components[1][j],
                            &self.components[2][k],
                        )
                        .unwrap_or(false)
                    })
                    .collect();
                if hits.len() == 1 {
                    *slot = Some(hits[0]);
                }
            }
        }
        Ok(PartialSquare::new(entries)?)
    }

    /// The one-sided Lagrange test: rows of the partial square that are
    /// fully determined generate a permutation group; when its order fails
    /// to divide n, no group of order n can label the multinet.
    pub fn group_labeling_obstruction(&self, cap: usize) -> Result<Obstruction, MultinetError> {
        let square = self.partial_latin_square()?;
        let rows = square.determined_rows();
        if rows.len() < 2 {
            return Ok(Obstruction::Inconclusive);
        }
        let group = row_quotient_group(&square, &rows, cap)?;
        let t = group.order();
        if !self.order().is_multiple_of(t) {
            Ok(Obstruction::Obstructed(t))
        } else {
            Ok(Obstruction::Inconclusive)
        }
    }

    /// A cubic through all 3n points, if one exists.
    pub fn is_algebraic(&self) -> Option<Curve> {
        let pts: Vec<Point> = self.points().into_iter().cloned().collect();
        fit_curve(&pts, 3).into_iter().next()
    }

    /// Candidate cover lines: all lines through at least three points,
    /// with their incidence bitsets, sorted by line coordinates.
    fn candidate_lines(&self, pts: &[Point]) -> Vec<(Line, BitSet)> {
        let mut map: BTreeMap<Line, BitSet> = BTreeMap::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let Ok(l) = join(&pts[i], &pts[j]) else {
                    continue;
                };
                let bs = map.entry(l).or_insert_with(|| BitSet::new(pts.len()));
                bs.set(i);
                bs.set(j);
            }
        }
        map.into_iter().filter(|(_, bs)| bs.count() >= 3).collect()
    }

    /// Deterministic trichotomy cascade over line covers, then a conic+line
    /// split, then a four-line cover, then a cubic fit.
    pub fn classify(&self) -> Result<Classification, MultinetError> {
        let pts: Vec<Point> = self.points().into_iter().cloned().collect();
        let n = self.order();
        if n <= 2 {
            return Ok(Classification {
                verdict: Verdict::Unclassified,
                lines: vec![],
                conic: None,
                cubic: None,
            });
        }
        let cands = self.candidate_lines(&pts);
        // (1) a single line through everything
        if let Some((l, _)) = cands.iter().find(|(_, bs)| bs.count() == pts.len()) {
            return self.attach(
                Classification {
                    verdict: Verdict::ContainedInLine,
                    lines: vec![l.clone()],
                    conic: None,
                    cubic: None,
                },
                &pts,
            );
        }
        // (2a) three-line cover
        if let Some(cover) = find_cover(&cands, pts.len(), 3, &|_| true) {
            let lines: Vec<Line> = cover.iter().map(|&i| cands[i].0.clone()).collect();
            let verdict = if are_concurrent(&lines)? {
                Verdict::Pencil
            } else {
                Verdict::Triangle
            };
            return self.attach(
                Classification {
                    verdict,
                    lines,
                    conic: None,
                    cubic: None,
                },
                &pts,
            );
        }
        // (2b) one line plus an irreducible conic through the rest
        if self.field.characteristic() != 2 {
            for (l, bs) in &cands {
                let rest: Vec<Point> = (0..pts.len())
                    .filter(|&i| !bs.get(i))
                    .map(|i| pts[i].clone())
                    .collect();
                if rest.len() < 3 {
                    continue;
                }
                let basis = fit_curve(&rest, 2);
                if basis.len() == 1 && conic_is_irreducible(&basis[0])? {
                    return self.attach(
                        Classification {
                            verdict: Verdict::ConicLine,
                            lines: vec![l.clone()],
                            conic: Some(basis[0].clone()),
                            cubic: None,
                        },
                        &pts,
                    );
                }
            }
        }
        // (2c) four-line cover with exactly three concurrent off the fourth
        let tetra_pattern = |lines: &[Line]| -> bool {
            for skip in 0..4 {
                let triple: Vec<Line> = (0..4)
                    .filter(|&i| i != skip)
                    .map(|i| lines[i].clone())
                    .collect();
                if let Ok(true) = are_concurrent(&triple) {
                    if let Ok(p) = crate::geom::meet(&triple[0], &triple[1]) {
                        if !p.on_line(&lines[skip]) {
                            return true;
                        }
                    }
                }
            }
            false
        };
        if let Some(cover) = find_cover(&cands, pts.len(), 4, &|chosen| {
            let lines: Vec<Line> = chosen.iter().map(|&i| cands[i].0.clone()).collect();
            tetra_pattern(&lines)
        }) {
            let lines: Vec<Line> = cover.iter().map(|&i| cands[i].0.clone()).collect();
            return self.attach(
                Classification {
                    verdict: Verdict::Tetrahedron,
                    lines,
                    conic: None,
                    cubic: None,
                },
                &pts,
            );
        }
        // (3) any cubic at all
        if let Some(cubic) = self.is_algebraic() {
            return self.attach(
                Classification {
                    verdict: Verdict::AlgebraicOther,
                    lines: vec![],
                    conic: None,
                    cubic: Some(cubic),
                },
                &pts,
            );
        }
        Ok(Classification {
            verdict: Verdict::Unclassified,
            lines: vec![],
            conic: None,
            cubic: None,
        })
    }

    /// Re-verify a witness before handing it out.
    fn attach(&self, c: Classification, pts: &[Point]) -> Result<Classification, MultinetError> {
        let on_witness = |p: &Point| -> bool {
            c.lines.iter().any(|l| p.on_line(l))
                || c.conic.as_ref().is_some_and(|q| q.evaluate(p).is_zero())
                || c.cubic.as_ref().is_some_and(|q| q.evaluate(p).is_zero())
        };
        if !pts.iter().all(on_witness) {
            return Err(MultinetError::InvariantViolation(
                "classification witness fails to cover the point set".into(),
            ));
        }
        Ok(c)
    }

    /// Apply one 3×3 matrix (rows of field elements) to every point.
    pub fn transform(&self, m: &[Vec<FieldElement>]) -> Result<LabeledMultinet, MultinetError> {
        let apply = |p: &Point| -> Result<Point, GeomError> {
            let coords: Vec<FieldElement> = m
                .iter()
                .map(|row| {
                    let mut acc = row[0].mul(&p.coords()[0]);
                    for (mc, pc) in row.iter().zip(p.coords()).skip(1) {
                        acc = acc.add(&mc.mul(pc));
                    }
                    acc
                })
                .collect();
            Point::new(coords)
        };
        let mut comps: Vec<Vec<Point>> = Vec::with_capacity(3);
        for c in &self.components {
            comps.push(c.iter().map(apply).collect::<Result<_, _>>()?);
        }
        LabeledMultinet::new(
            self.field.clone(),
            self.labels.clone(),
            [comps[0].clone(), comps[1].clone(), comps[2].clone()],
            self.provenance.clone(),
        )
    }
}

/// Find a cover of all points by exactly `size` candidate lines, branching
/// on the lowest uncovered point and trying lines in candidate order, so
/// the result is deterministic. `accept` filters complete covers.
fn find_cover(
    cands: &[(Line, BitSet)],
    npoints: usize,
    size: usize,
    accept: &dyn Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if cands.is_empty() {
        return None;
    }
    let through: Vec<Vec<usize>> = (0..npoints)
        .map(|p| {
            (0..cands.len())
                .filter(|&c| cands[c].1.get(p))
                .collect::<Vec<usize>>()
        })
        .collect();
    let max_cov = cands.iter().map(|(_, bs)| bs.count()).max().unwrap_or(0);
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        cands: &[(Line, BitSet)],
        through: &[Vec<usize>],
        npoints: usize,
        size: usize,
        max_cov: usize,
        covered: &BitSet,
        chosen: &mut Vec<usize>,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        let ncov = covered.count();
        if ncov == npoints {
            if chosen.len() == size && accept(chosen) {
                return Some(chosen.clone());
            }
            return None;
        }
        if chosen.len() >= size || (size - chosen.len()) * max_cov < npoints - ncov {
            return None;
        }
        let p = (0..npoints).find(|&i| !covered.get(i)).unwrap();
        for &c in &through[p] {
            if chosen.contains(&c) {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(&cands[c].1);
            chosen.push(c);
            if let Some(hit) = dfs(
                cands, through, npoints, size, max_cov, &next, chosen, accept,
            ) {
                return Some(hit);
            }
            chosen.pop();
        }
        None
    }
    let covered = BitSet::new(npoints);
    let mut chosen = Vec::new();
    dfs(
        cands,
        &through,
        npoints,
        size,
        max_cov,
        &covered,
        &mut chosen,
        accept,
    )
}
