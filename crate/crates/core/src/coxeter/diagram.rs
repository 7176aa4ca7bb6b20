//! Classification data for crystallographic Coxeter diagrams: the finite
//! (spherical) types, their orders, and the untwisted affine extensions.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

use crate::linalg::{determinant, kernel_vector, Q};

/// Coxeter matrix entry standing for m = ∞.
pub const M_INF: u32 = u32::MAX;

/// Map a Cartan entry pair to the Coxeter order of `st`.
pub(crate) fn coxeter_entry(c_st: i64, c_ts: i64) -> Option<u32> {
    match (c_st, c_ts) {
        (0, 0) => Some(2),
        (-1, -1) => Some(3),
        (-1, -2) | (-2, -1) => Some(4),
        (-1, -3) | (-3, -1) => Some(6),
        (-2, -2) | (-1, -4) | (-4, -1) => Some(M_INF),
        _ => None,
    }
}

/// Irreducible finite Coxeter type, up to the B/C coincidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteType {
    pub letter: char,
    pub rank: usize,
}

impl FiniteType {
    pub fn name(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.letter {
            'A' => fact(n + 1),
            'B' | 'C' => (1u128 << n) * fact(n),
            'D' => (1u128 << (n - 1)) * fact(n),
            'E' => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            'F' => 1152,
            'G' => 12,
            _ => unreachable!(),
        }
    }

    pub fn coxeter_number(&self) -> u64 {
        let n = self.rank as u64;
        match self.letter {
            'A' => n + 1,
            'B' | 'C' => 2 * n,
            'D' => 2 * n - 2,
            'E' => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            'F' => 12,
            'G' => 6,
            _ => unreachable!(),
        }
    }
}

pub(crate) fn valid_finite(letter: char, n: usize) -> bool {
    match letter {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 4,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    }
}

/// Cartan matrix `a_ij = <α_i^∨, α_j>` of a finite type in Bourbaki numbering.
pub(crate) fn finite_cartan(letter: char, n: usize) -> Vec<Vec<i64>> {
    // (α_i, α_i) and the nonzero products (α_i, α_j), i < j.
    let mut norms = vec![2i64; n];
    let mut products: Vec<(usize, usize, i64)> = Vec::new();
    match letter {
        'A' => products.extend((0..n - 1).map(|i| (i, i + 1, -1))),
        'B' => {
            norms = vec![4; n];
            norms[n - 1] = 2;
            products.extend((0..n - 1).map(|i| (i, i + 1, -2)));
        }
        'C' => {
            norms[n - 1] = 4;
            products.extend((0..n - 2).map(|i| (i, i + 1, -1)));
            products.push((n - 2, n - 1, -2));
        }
        'D' => {
            products.extend((0..n - 2).map(|i| (i, i + 1, -1)));
            products.push((n - 3, n - 1, -1));
        }
        'E' => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
                if j < n {
                    products.push((i, j, -1));
                }
            }
        }
        'F' => {
            norms = vec![4, 4, 2, 2];
            products.extend([(0, 1, -2), (1, 2, -2), (2, 3, -1)]);
        }
        'G' => {
            norms = vec![2, 6];
            products.push((0, 1, -3));
        }
        _ => unreachable!("validated by caller"),
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    for (i, j, p) in products {
        a[i][j] = 2 * p / norms[i];
        a[j][i] = 2 * p / norms[j];
    }
    a
}

/// Positive integers `d` with `d_i a_ij = d_j a_ji`, scaled to be primitive.
pub(crate) fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = di * Q::new(a[i][j] as i128, a[j][i] as i128);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.unwrap()).collect();
    let den = d.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = d.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    Some(ints.iter().map(|x| (x / g) as i64).collect())
}

/// All positive roots of a finite-type Cartan matrix, as coefficient vectors.
pub(crate) fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let c: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
            if c >= 0 {
                continue;
            }
            let mut nb = b.clone();
            nb[i] -= c;
            if seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
        out.push(b);
    }
    out.sort_by(|x, y| (x.iter().sum::<i64>(), x).cmp(&(y.iter().sum::<i64>(), y)));
    out
}

/// Untwisted affine extension of a finite Cartan matrix: a new node 0 with
/// `α_0 = δ − θ` for the highest root θ. Returns the affine Cartan matrix
/// (node 0 first) and the null vector δ.
pub(crate) fn affinize(finite: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = finite.len();
    let d = symmetrizer(finite).expect("finite Cartan matrices are symmetrizable");
    let theta = positive_roots(finite)
        .into_iter()
        .max_by_key(|r| r.iter().sum::<i64>())
        .unwrap();
    // (θ, α_j) with (α_i, α_j) = d_i a_ij
    let theta_dot: Vec<i64> = (0..n).map(|j| (0..n).map(|i| theta[i] * d[i] * finite[i][j]).sum()).collect();
    let theta_norm: i64 = (0..n).map(|j| theta[j] * theta_dot[j]).sum();
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    a[0][0] = 2;
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = finite[i][j];
        }
        // <α_0^∨, α_j> = −2(θ, α_j)/(θ, θ);  <α_j^∨, α_0> = −(θ, α_j)/d_j
        a[0][i + 1] = -2 * theta_dot[i] / theta_norm;
        a[i + 1][0] = -theta_dot[i] / d[i];
    }
    let mut delta = vec![1];
    delta.extend(theta);
    (a, delta)
}

pub(crate) fn components(cox: &[Vec<u32>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = nodes.to_vec();
    let mut out = Vec::new();
    while let Some(start) = left.first().copied() {
        let mut comp = vec![start];
        left.retain(|&x| x != start);
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            let (adj, rest): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&v| cox[u][v] != 2);
            comp.extend(adj);
            left = rest;
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Identify a connected crystallographic diagram as a finite type.
pub(crate) fn classify_connected(cox: &[Vec<u32>], nodes: &[usize]) -> Option<FiniteType> {
    let n = nodes.len();
    if n == 1 {
        return Some(FiniteType { letter: 'A', rank: 1 });
    }
    let mut edges = Vec::new();
    for (a, &u) in nodes.iter().enumerate() {
        for &v in &nodes[a + 1..] {
            match cox[u][v] {
                2 => {}
                M_INF => return None,
                m => edges.push((u, v, m)),
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let degree = |x: usize| edges.iter().filter(|e| e.0 == x || e.1 == x).count();
    let fours = edges.iter().filter(|e| e.2 == 4).count();
    let sixes = edges.iter().filter(|e| e.2 == 6).count();
    if sixes > 0 {
        return (sixes == 1 && n == 2).then_some(FiniteType { letter: 'G', rank: 2 });
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&x| degree(x) >= 3).collect();
    if fours > 1 {
        return None;
    }
    if fours == 1 {
        if !branch.is_empty() {
            return None;
        }
        let e = edges.iter().find(|e| e.2 == 4).unwrap();
        let at_end = degree(e.0) == 1 || degree(e.1) == 1;
        if at_end {
            return Some(FiniteType { letter: 'B', rank: n });
        }
        return (n == 4).then_some(FiniteType { letter: 'F', rank: 4 });
    }
    match branch.as_slice() {
        [] => Some(FiniteType { letter: 'A', rank: n }),
        [b] if degree(*b) == 3 => {
            let mut arms: Vec<usize> = Vec::new();
            for e in edges.iter().filter(|e| e.0 == *b || e.1 == *b) {
                let mut prev = *b;
                let mut cur = if e.0 == *b { e.1 } else { e.0 };
                let mut len = 1;
                loop {
                    let next = edges
                        .iter()
                        .filter_map(|f| {
                            if f.0 == cur && f.1 != prev {
                                Some(f.1)
                            } else if f.1 == cur && f.0 != prev {
                                Some(f.0)
                            } else {
                                None
                            }
                        })
                        .collect::<Vec<_>>();
                    match next.as_slice() {
                        [] => break,
                        [x] => {
                            prev = cur;
                            cur = *x;
                            len += 1;
                        }
                        _ => return None,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(FiniteType { letter: 'D', rank: k + 3 }),
                [1, 2, 2] => Some(FiniteType { letter: 'E', rank: 6 }),
                [1, 2, 3] => Some(FiniteType { letter: 'E', rank: 7 }),
                [1, 2, 4] => Some(FiniteType { letter: 'E', rank: 8 }),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Types of the components of a spherical subdiagram, or `None` when the
/// parabolic subgroup is infinite.
pub(crate) fn parabolic_types(cox: &[Vec<u32>], nodes: &[usize]) -> Option<Vec<FiniteType>> {
    components(cox, nodes)
        .iter()
        .map(|c| classify_connected(cox, c))
        .collect()
}

pub(crate) fn parabolic_order(cox: &[Vec<u32>], nodes: &[usize]) -> Option<u128> {
    parabolic_types(cox, nodes).map(|ts| ts.iter().map(|t| t.order()).product())
}

pub(crate) fn type_name(types: &[FiniteType]) -> String {
    if types.is_empty() {
        return "trivial".into();
    }
    let mut names: Vec<String> = types.iter().map(|t| t.name()).collect();
    names.sort();
    names.join("x")
}

/// Result of classifying a (Cartan, Coxeter) pair.
pub(crate) struct Classification {
    pub spherical: bool,
    pub affine: Option<AffineShape>,
}

pub(crate) struct AffineShape {
    pub null_vector: Vec<i64>,
    pub special: Vec<usize>,
    pub gem_type: FiniteType,
}

pub(crate) fn classify(cartan: &[Vec<i64>], cox: &[Vec<u32>]) -> Classification {
    let n = cartan.len();
    let all: Vec<usize> = (0..n).collect();
    if parabolic_types(cox, &all).is_some() {
        return Classification { spherical: true, affine: None };
    }
    let connected = components(cox, &all).len() == 1;
    if !connected || n < 2 || symmetrizer(cartan).is_none() || determinant(cartan) != 0 {
        return Classification { spherical: false, affine: None };
    }
    let mut deletions = Vec::with_capacity(n);
    for o in 0..n {
        let rest: Vec<usize> = all.iter().copied().filter(|&x| x != o).collect();
        match parabolic_types(cox, &rest) {
            Some(t) => deletions.push(t),
            None => return Classification { spherical: false, affine: None },
        }
    }
    let Some(null_vector) = kernel_vector(cartan) else {
        return Classification { spherical: false, affine: None };
    };
    if null_vector.iter().any(|&x| x <= 0) {
        return Classification { spherical: false, affine: None };
    }
    // X_n is the largest spherical deletion; special vertices are those whose
    // deletion has exactly that type.
    let order = |ts: &Vec<FiniteType>| ts.iter().map(|t| t.order()).product::<u128>();
    let best = deletions.iter().max_by_key(|ts| order(ts)).unwrap().clone();
    if best.len() != 1 {
        return Classification { spherical: false, affine: None };
    }
    let special = (0..n).filter(|&o| deletions[o] == best).collect();
    Classification {
        spherical: false,
        affine: Some(AffineShape { null_vector, special, gem_type: best[0] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cox_of(a: &[Vec<i64>]) -> Vec<Vec<u32>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { coxeter_entry(a[i][j], a[j][i]).unwrap() }).collect())
            .collect()
    }

    #[test]
    fn positive_root_counts_match_bourbaki() {
        for (l, n, count) in [
            ('A', 2, 3),
            ('A', 3, 6),
            ('B', 2, 4),
            ('C', 3, 9),
            ('D', 4, 12),
            ('G', 2, 6),
            ('F', 4, 24),
            ('E', 6, 36),
        ] {
            assert_eq!(positive_roots(&finite_cartan(l, n)).len(), count, "{l}{n}");
        }
    }

    #[test]
    fn finite_types_classify_to_themselves() {
        for (l, n) in [('A', 4), ('B', 3), ('C', 3), ('D', 5), ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)] {
            let a = finite_cartan(l, n);
            let cox = cox_of(&a);
            let all: Vec<usize> = (0..n).collect();
            let t = classify_connected(&cox, &all).unwrap();
            let expected = if l == 'C' { 'B' } else { l };
            assert_eq!((t.letter, t.rank), (expected, n));
        }
    }

    #[test]
    fn affine_extensions_have_null_vectors() {
        for (l, n) in [('A', 1), ('A', 2), ('B', 3), ('C', 2), ('D', 4), ('G', 2), ('F', 4), ('E', 6)] {
            let (a, delta) = affinize(&finite_cartan(l, n));
            for row in &a {
                assert_eq!(row.iter().zip(&delta).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
            let c = classify(&a, &cox_of(&a));
            let shape = c.affine.unwrap_or_else(|| panic!("{l}~{n} not affine"));
            assert_eq!(shape.null_vector, delta);
            assert!(shape.special.contains(&0));
            for &o in &shape.special {
                assert_eq!(delta[o], 1);
            }
        }
    }

    #[test]
    fn hyperbolic_triangle_is_not_affine() {
        let a = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -1, 2]];
        let c = classify(&a, &cox_of(&a));
        assert!(!c.spherical);
        assert!(c.affine.is_none());
    }
}
