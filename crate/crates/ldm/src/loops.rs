//! Finite quasigroups, loops, and groups as latin squares; isotopes;
//! permutation-group closure; and the row-quotient obstruction machinery.
//!
//! Elements are 0-based indices internally; names travel alongside for
//! serialization. Permutations are stored as image vectors (`p[i]` is the
//! image of `i`), composed as `(a * b)[i] = a[b[i]]`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("not a latin square: {kind} {index} repeats a symbol")]
    NotLatin { kind: RowCol, index: usize },
    #[error("table is not square or holds an out-of-range index")]
    Malformed,
    #[error("bad parameters for standard table")]
    BadParameters,
    #[error("table is not a group")]
    NotAGroup,
    #[error("permutation closure exceeded the element cap {0}")]
    CapExceeded(usize),
    #[error("row {0} of the partial square is not fully determined")]
    IncompleteRow(usize),
    #[error("generators have mismatched degrees or are not permutations")]
    BadGenerators,
    #[error("partial square entry repeats a symbol in a row or column")]
    PartialClash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowCol {
    Row,
    Col,
}

impl std::fmt::Display for RowCol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowCol::Row => write!(f, "row"),
            RowCol::Col => write!(f, "column"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite quasigroup: a validated latin square with named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl MultTable {
    /// Validate a candidate table (0-based indices) as a latin square.
    pub fn validate(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<MultTable, LoopError> {
        let n = table.len();
        if n == 0 || names.len() != n {
            return Err(LoopError::Malformed);
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(LoopError::Malformed);
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if seen[x] {
                    return Err(LoopError::NotLatin {
                        kind: RowCol::Row,
                        index: i,
                    });
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(LoopError::NotLatin {
                        kind: RowCol::Col,
                        index: j,
                    });
                }
                seen[row[j]] = true;
            }
        }
        Ok(MultTable { names, table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Left: the unique x with a·x = b. Right: the unique x with x·a = b.
    pub fn divide(&self, side: Side, a: usize, b: usize) -> usize {
        match side {
            Side::Left => self.table[a].iter().position(|&y| y == b).unwrap(),
            Side::Right => (0..self.order()).find(|&x| self.table[x][a] == b).unwrap(),
        }
    }

    /// The principal isotope x∘y = (x/v)·(u\y); a loop with unit u·v.
    pub fn principal_isotope(&self, u: usize, v: usize) -> MultTable {
        let n = self.order();
        let table = (0..n)
            .map(|x| {
                let xr = self.divide(Side::Right, v, x);
                (0..n)
                    .map(|y| self.mul(xr, self.divide(Side::Left, u, y)))
                    .collect()
            })
            .collect();
        MultTable {
            names: self.names.clone(),
            table,
        }
    }

    /// Two-sided identity element, if any.
    pub fn identity(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Identity plus full n^3 associativity check.
    pub fn is_group(&self) -> bool {
        if self.identity().is_none() {
            return false;
        }
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sorted list of element orders; requires a group table.
    pub fn element_order_census(&self) -> Result<Vec<usize>, LoopError> {
        if !self.is_group() {
            return Err(LoopError::NotAGroup);
        }
        let e = self.identity().unwrap();
        let mut orders: Vec<usize> = (0..self.order())
            .map(|g| {
                let mut acc = g;
                let mut k = 1;
                while acc != e {
                    acc = self.mul(acc, g);
                    k += 1;
                }
                k
            })
            .collect();
        orders.sort_unstable();
        Ok(orders)
    }

    /// True iff the table is a cyclic group.
    pub fn is_cyclic_group(&self) -> bool {
        match self.element_order_census() {
            Ok(orders) => orders.last() == Some(&self.order()),
            Err(_) => false,
        }
    }
}

/// Z/n with elements named "0".."n-1".
pub fn cyclic(n: usize) -> Result<MultTable, LoopError> {
    if n == 0 {
        return Err(LoopError::BadParameters);
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    MultTable::validate(names, table)
}

/// The dihedral group of order 2m in the convention forced by the spatial
/// point maps: indices 0..m are h, m..2m are hσ, and
/// x·y = x+y, x·(yσ) = (y−x)σ, (xσ)·y = (x+y)σ, (xσ)·(yσ) = y−x.
pub fn dihedral_geom(m: usize) -> Result<MultTable, LoopError> {
    if m == 0 {
        return Err(LoopError::BadParameters);
    }
    let n = 2 * m;
    let mut names: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    names.extend((0..m).map(|i| format!("{i}s")));
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..m {
        for y in 0..m {
            table[x][y] = (x + y) % m;
            table[x][m + y] = m + (y + m - x) % m;
            table[m + x][y] = m + (x + y) % m;
            table[m + x][m + y] = (y + m - x) % m;
        }
    }
    MultTable::validate(names, table)
}

/// The group A = H ∪ H′ over H = Z/m: x*y = x+y, x*y′ = x′*y = (x+y)′,
/// x′*y′ = x+y+k. Indices 0..m are H, m..2m are H′.
pub fn biextension(m: usize, k: usize) -> Result<MultTable, LoopError> {
    if m == 0 || k >= m {
        return Err(LoopError::BadParameters);
    }
    let n = 2 * m;
    let mut names: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    names.extend((0..m).map(|i| format!("{i}'")));
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..m {
        for y in 0..m {
            table[x][y] = (x + y) % m;
            table[x][m + y] = m + (x + y) % m;
            table[m + x][y] = m + (x + y) % m;
            table[m + x][m + y] = (x + y + k) % m;
        }
    }
    MultTable::validate(names, table)
}

/// (Z/r)^k with base-r digit-string names, most significant digit first.
pub fn elem_abelian(r: usize, k: usize) -> Result<MultTable, LoopError> {
    if r == 0 || k == 0 {
        return Err(LoopError::BadParameters);
    }
    let n = r.checked_pow(k as u32).ok_or(LoopError::BadParameters)?;
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % r;
            x /= r;
        }
        d
    };
    let pack = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * r + x);
    let names = (0..n)
        .map(|i| {
            digits(i)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    let table = (0..n)
        .map(|i| {
            let di = digits(i);
            (0..n)
                .map(|j| {
                    let dj = digits(j);
                    let sum: Vec<usize> = di.iter().zip(&dj).map(|(a, b)| (a + b) % r).collect();
                    pack(&sum)
                })
                .collect()
        })
        .collect();
    MultTable::validate(names, table)
}

/// An n×n fragment of a multiplication table; `None` marks an entry the
/// geometry leaves undetermined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSquare {
    entries: Vec<Vec<Option<usize>>>,
}

impl PartialSquare {
    pub fn new(entries: Vec<Vec<Option<usize>>>) -> Result<PartialSquare, LoopError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(LoopError::Malformed);
        }
        if entries
            .iter()
            .flatten()
            .any(|e| matches!(e, Some(x) if *x >= n))
        {
            return Err(LoopError::Malformed);
        }
        // entries is consulted both as [i][j] and [j][i], so index loops
        // are the clear formulation here.
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if let Some(x) = entries[i][j] {
                    if row_seen[x] {
                        return Err(LoopError::PartialClash);
                    }
                    row_seen[x] = true;
                }
                if let Some(x) = entries[j][i] {
                    if col_seen[x] {
                        return Err(LoopError::PartialClash);
                    }
                    col_seen[x] = true;
                }
            }
        }
        Ok(PartialSquare { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.entries
    }

    pub fn undetermined_count(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter(|e| e.is_none())
            .count()
    }

    /// Indices of rows with no undetermined entry.
    pub fn determined_rows(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.entries[i].iter().all(|e| e.is_some()))
            .collect()
    }

    /// Complete the square row-major with the smallest legal symbol,
    /// backtracking when a dead end appears. Deterministic.
    pub fn first_fit_completion(&self, names: Vec<String>) -> Option<MultTable> {
        let n = self.order();
        let mut grid: Vec<Vec<Option<usize>>> = self.entries.clone();
        let holes: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| grid[i][j].is_none())
            .collect();
        fn legal(grid: &[Vec<Option<usize>>], i: usize, j: usize, s: usize) -> bool {
            grid[i].iter().all(|e| *e != Some(s)) && grid.iter().all(|row| row[j] != Some(s))
        }
        fn solve(grid: &mut Vec<Vec<Option<usize>>>, holes: &[(usize, usize)], at: usize) -> bool {
            if at == holes.len() {
                return true;
            }
            let (i, j) = holes[at];
            let n = grid.len();
            for s in 0..n {
                if legal(grid, i, j, s) {
                    grid[i][j] = Some(s);
                    if solve(grid, holes, at + 1) {
                        return true;
                    }
                    grid[i][j] = None;
                }
            }
            false
        }
        if !solve(&mut grid, &holes, 0) {
            return None;
        }
        let table = grid
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.unwrap()).collect())
            .collect();
        Some(MultTable::validate(names, table).expect("completion is latin"))
    }
}

/// A permutation group given by its full element set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        q[pi] = i;
    }
    q
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        if x >= seen.len() || seen[x] {
            false
        } else {
            seen[x] = true;
            true
        }
    })
}

/// Breadth-first closure of the generated group, aborting past `cap`
/// elements.
pub fn perm_closure(gens: &[Vec<usize>], cap: usize) -> Result<PermGroup, LoopError> {
    if gens.is_empty() {
        return Err(LoopError::BadGenerators);
    }
    let degree = gens[0].len();
    if gens.iter().any(|g| g.len() != degree || !is_permutation(g)) {
        return Err(LoopError::BadGenerators);
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![identity];
    let mut frontier = 0usize;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = compose(g, &current);
            if seen.insert(next.clone()) {
                if elements.len() + 1 > cap {
                    return Err(LoopError::CapExceeded(cap));
                }
                elements.push(next);
            }
        }
    }
    elements.sort_unstable();
    Ok(PermGroup {
        degree,
        generators: gens.to_vec(),
        elements,
    })
}

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// The group generated by {ρ_x ρ_b⁻¹ : x ∈ rows}, b the smallest chosen
/// row. Every chosen row must be fully determined (a permutation).
pub fn row_quotient_group(
    s: &PartialSquare,
    rows: &[usize],
    cap: usize,
) -> Result<PermGroup, LoopError> {
    let mut rows: Vec<usize> = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    let mut perms = Vec::with_capacity(rows.len());
    for &r in &rows {
        let row: Option<Vec<usize>> = s.rows()[r].iter().copied().collect();
        let row = row.ok_or(LoopError::IncompleteRow(r))?;
        if !is_permutation(&row) {
            return Err(LoopError::IncompleteRow(r));
        }
        perms.push(row);
    }
    if perms.is_empty() {
        return Err(LoopError::BadGenerators);
    }
    let base_inv = invert(&perms[0]);
    let gens: Vec<Vec<usize>> = perms.iter().map(|p| compose(p, &base_inv)).collect();
    perm_closure(&gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_validation() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(MultTable::validate(names(2), vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(
            MultTable::validate(names(2), vec![vec![0, 0], vec![1, 1]]).unwrap_err(),
            LoopError::NotLatin {
                kind: RowCol::Row,
                index: 0
            }
        );
        assert_eq!(
            MultTable::validate(names(2), vec![vec![0, 1], vec![0, 1]]).unwrap_err(),
            LoopError::NotLatin {
                kind: RowCol::Col,
                index: 0
            }
        );
        assert!(cyclic(6).is_ok());
    }

    #[test]
    fn division() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.divide(Side::Left, 2, 5), 3);
        for a in 0..6 {
            assert_eq!(c6.divide(Side::Left, a, a), 0);
        }
        let d = dihedral_geom(3).unwrap();
        // sigma is index 3 (0s); sigma * sigma = identity, so sigma / sigma...
        // divide(right, sigma, identity) = the x with x*sigma = 0, i.e. sigma.
        assert_eq!(d.divide(Side::Right, 3, 0), 3);
    }

    #[test]
    fn isotopes() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.principal_isotope(0, 0), c6);
        let iso = c6.principal_isotope(2, 3);
        assert!(iso.is_group());
        assert_eq!(iso.identity(), Some(2 + 3));
        let c4 = cyclic(4).unwrap();
        let iso4 = c4.principal_isotope(1, 1);
        assert_eq!(iso4.identity(), Some(2));
        assert!(iso4.is_group());
    }

    #[test]
    fn group_detection() {
        assert!(cyclic(6).unwrap().is_group());
        // smallest nonassociative loop, order 5
        let names = (0..5).map(|i| i.to_string()).collect();
        let loop5 = MultTable::validate(
            names,
            vec![
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 3, 4, 0, 1],
                vec![3, 4, 1, 2, 0],
                vec![4, 2, 0, 1, 3],
            ],
        )
        .unwrap();
        assert_eq!(loop5.identity(), Some(0));
        assert!(!loop5.is_group());
    }

    #[test]
    fn standard_tables() {
        let b20 = biextension(2, 0).unwrap();
        assert_eq!(b20.element_order_census().unwrap(), vec![1, 2, 2, 2]);
        let b21 = biextension(2, 1).unwrap();
        assert_eq!(b21.element_order_census().unwrap(), vec![1, 2, 4, 4]);
        let d3 = dihedral_geom(3).unwrap();
        assert!(d3.is_group());
        assert_eq!(d3.element_order_census().unwrap(), vec![1, 2, 2, 2, 3, 3]);
        // nonabelian: 1 * sigma vs sigma * 1
        assert_ne!(d3.mul(1, 3), d3.mul(3, 1));
        // (x sigma)^2 = 1 for all x
        for x in 3..6 {
            assert_eq!(d3.mul(x, x), 0);
        }
        let k4 = elem_abelian(2, 2).unwrap();
        assert_eq!(k4.element_order_census().unwrap(), vec![1, 2, 2, 2]);
        assert!(!cyclic(4)
            .unwrap()
            .element_order_census()
            .unwrap()
            .contains(&3));
        assert_eq!(
            cyclic(4).unwrap().element_order_census().unwrap(),
            vec![1, 2, 4, 4]
        );
        assert!(cyclic(6).unwrap().is_cyclic_group());
        assert!(!k4.is_cyclic_group());
    }

    #[test]
    fn closure_orders() {
        let s3a = vec![1, 2, 0]; // 3-cycle
        let s3b = vec![1, 0, 2]; // transposition
        assert_eq!(
            perm_closure(std::slice::from_ref(&s3b), 100)
                .unwrap()
                .order(),
            2
        );
        assert_eq!(perm_closure(&[s3a, s3b], 100).unwrap().order(), 6);
        let big = vec![1, 2, 0];
        assert_eq!(
            perm_closure(&[big], 2).unwrap_err(),
            LoopError::CapExceeded(2)
        );
    }

    #[test]
    fn row_quotient_of_group_divides_order() {
        for table in [cyclic(6).unwrap(), dihedral_geom(4).unwrap()] {
            let n = table.order();
            let entries = table
                .rows()
                .iter()
                .map(|r| r.iter().map(|&x| Some(x)).collect())
                .collect();
            let s = PartialSquare::new(entries).unwrap();
            let rows: Vec<usize> = (0..n).collect();
            let g = row_quotient_group(&s, &rows, 10_000).unwrap();
            assert_eq!(n % g.order(), 0);
            // single row gives the trivial group
            let t = row_quotient_group(&s, &[2], 10).unwrap();
            assert_eq!(t.order(), 1);
        }
    }

    #[test]
    fn base_row_choice_is_immaterial() {
        let d4 = dihedral_geom(4).unwrap();
        let entries: Vec<Vec<Option<usize>>> = d4
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| Some(x)).collect())
            .collect();
        let s = PartialSquare::new(entries).unwrap();
        let a = row_quotient_group(&s, &[1, 3, 5], 10_000).unwrap().order();
        let b = row_quotient_group(&s, &[5, 1, 3], 10_000).unwrap().order();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_square_machinery() {
        let s = PartialSquare::new(vec![
            vec![Some(0), Some(1), None],
            vec![Some(1), None, Some(0)],
            vec![None, Some(0), Some(1)],
        ])
        .unwrap();
        assert_eq!(s.undetermined_count(), 3);
        assert_eq!(s.determined_rows(), Vec::<usize>::new());
        let names = (0..3).map(|i| i.to_string()).collect();
        let t = s.first_fit_completion(names).unwrap();
        assert_eq!(t.mul(0, 2), 2);
        assert!(PartialSquare::new(vec![vec![Some(0), Some(0)], vec![None, None],]).is_err());
    }
}
