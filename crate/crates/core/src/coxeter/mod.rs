//! Crystallographic Coxeter systems of finite rank, realized through the
//! reflection representation on the root lattice.
//!
//! A group element is stored as the integer matrix of its action on the
//! root lattice in the basis of simple roots; equality and hashing go
//! through the matrix. Simple reflections act by
//! `s_i(α_j) = α_j − a_ij α_i` for the Cartan matrix `a_ij = <α_i^∨, α_j>`.

mod diagram;
mod elem;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

pub use diagram::{FiniteType, M_INF};
pub use elem::{DiagramAutomorphism, Elem, RootVec, Word};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use diagram::{affinize, classify, coxeter_entry, finite_cartan, parabolic_order, parabolic_types, valid_finite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Spherical,
    Affine,
    Other,
}

/// Data attached to a connected affine system.
#[derive(Clone, Debug)]
pub struct AffineData {
    /// Primitive positive generator δ of the kernel of the Cartan matrix.
    pub null_vector: Vec<i64>,
    /// Generators whose deletion leaves the finite diagram X_n.
    pub special_vertices: Vec<usize>,
    /// Reference special vertex (δ-coefficient 1) used to split off the
    /// finite part of a root and to coordinatize the translation lattice.
    pub base_vertex: usize,
    /// The spherical type X_n of every gem.
    pub gem_type: FiniteType,
}

#[derive(Clone, Debug)]
pub struct CoxSystem {
    id: u64,
    name: String,
    labels: Vec<String>,
    coxeter: Vec<Vec<u32>>,
    cartan: Vec<Vec<i64>>,
    kind: Kind,
    affine: Option<AffineData>,
    reflections: Vec<IntMatrix>,
}

/// Parses either a type string (`A~2`, `C~2`, `G2`, ...) or a JSON object
/// `{"generators": [...], "m": [[...]]}`.
pub fn build_system(spec: &str) -> Result<CoxSystem> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        CoxSystem::from_json(spec)
    } else {
        CoxSystem::from_type(spec)
    }
}

impl CoxSystem {
    pub fn from_type(spec: &str) -> Result<CoxSystem> {
        let bad = || Error::MalformedSpec(format!("`{spec}`: expected LETTER [~] RANK such as `A~2` or `G2`"));
        let mut chars = spec.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        let (affine, digits) = match (rest.strip_prefix('~'), rest.strip_suffix('~')) {
            (Some(d), _) => (true, d.to_string()),
            (None, Some(d)) => (true, d.to_string()),
            _ => (false, rest.clone()),
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: usize = digits.parse().map_err(|_| bad())?;
        let finite_ok = valid_finite(letter, n) || (affine && letter == 'B' && n == 2);
        if !finite_ok {
            return Err(Error::MalformedSpec(format!("`{spec}`: no type {letter}{n}")));
        }
        let name = if affine { format!("{letter}~{n}") } else { format!("{letter}{n}") };
        let fin = finite_cartan(letter, n);
        let sys = if affine {
            let (a, _) = affinize(&fin);
            let labels = (0..=n).map(|i| format!("s{i}")).collect();
            Self::from_cartan(name, labels, a)?
        } else {
            let labels = (1..=n).map(|i| format!("s{i}")).collect();
            Self::from_cartan(name, labels, fin)?
        };
        debug_assert_eq!(sys.kind == Kind::Affine, affine);
        Ok(sys)
    }

    /// Builds a system from an explicit Coxeter matrix; `m = 0` (or a JSON
    /// `null`/`"inf"`) stands for ∞.
    pub fn from_coxeter_matrix(labels: Vec<String>, m: &[Vec<i64>]) -> Result<CoxSystem> {
        let n = labels.len();
        if n == 0 || m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedSpec("matrix must be square with one row per generator".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) || !seen.insert(l) {
                return Err(Error::MalformedSpec(format!("bad or duplicate generator label `{l}`")));
            }
        }
        let mut cox = vec![vec![1u32; n]; n];
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(Error::MalformedSpec(format!("m({0},{0}) must be 1", labels[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m[i][j] != m[j][i] {
                    return Err(Error::AsymmetricMatrix { s: labels[i].clone(), t: labels[j].clone() });
                }
                cox[i][j] = match m[i][j] {
                    0 => M_INF,
                    v @ (2 | 3 | 4 | 6) => v as u32,
                    1 => {
                        return Err(Error::MalformedSpec(format!(
                            "m({},{}) = 1 for distinct generators",
                            labels[i], labels[j]
                        )))
                    }
                    v => {
                        return Err(Error::NonCrystallographic { s: labels[i].clone(), t: labels[j].clone(), m: v })
                    }
                };
            }
        }
        // Choose Cartan orientations for the 4- and 6-edges. Affine diagrams
        // get the untwisted orientation so parallel classes step by δ.
        let oriented: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| matches!(cox[i][j], 4 | 6))
            .collect();
        if oriented.len() > 16 {
            return Err(Error::MalformedSpec("too many multiple edges".into()));
        }
        for mask in 0u32..(1 << oriented.len()) {
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                a[i][i] = 2;
                for j in 0..n {
                    if i != j {
                        a[i][j] = match cox[i][j] {
                            2 => 0,
                            3 => -1,
                            M_INF => -2,
                            _ => -1,
                        };
                    }
                }
            }
            for (k, &(i, j)) in oriented.iter().enumerate() {
                let big = if cox[i][j] == 4 { -2 } else { -3 };
                if mask & (1 << k) == 0 {
                    a[j][i] = big;
                } else {
                    a[i][j] = big;
                }
            }
            let c = classify(&a, &cox);
            match c.affine {
                Some(shape) => {
                    if is_untwisted(&a, &shape.null_vector, &shape.special) {
                        return Self::from_cartan("custom".into(), labels, a);
                    }
                }
                None => return Self::from_cartan("custom".into(), labels, a),
            }
        }
        Err(Error::MalformedSpec("affine diagram admits no untwisted Cartan orientation".into()))
    }

    pub fn from_json(text: &str) -> Result<CoxSystem> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::MalformedSpec(format!("invalid JSON: {e}")))?;
        let gens = v
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::MalformedSpec("missing `generators` array".into()))?;
        let labels: Vec<String> = gens
            .iter()
            .map(|g| g.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::MalformedSpec("generator labels must be strings".into()))?;
        let rows = v
            .get("m")
            .and_then(|m| m.as_array())
            .ok_or_else(|| Error::MalformedSpec("missing `m` matrix".into()))?;
        let mut m = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::MalformedSpec("`m` rows must be arrays".into()))?;
            let mut r = Vec::with_capacity(row.len());
            for e in row {
                let val = match e {
                    serde_json::Value::Null => 0,
                    serde_json::Value::String(s) if matches!(s.as_str(), "inf" | "∞" | "infinity") => 0,
                    serde_json::Value::Number(x) => x
                        .as_i64()
                        .ok_or_else(|| Error::MalformedSpec(format!("bad matrix entry {x}")))?,
                    other => return Err(Error::MalformedSpec(format!("bad matrix entry {other}"))),
                };
                r.push(val);
            }
            m.push(r);
        }
        Self::from_coxeter_matrix(labels, &m)
    }

    fn from_cartan(name: String, labels: Vec<String>, cartan: Vec<Vec<i64>>) -> Result<CoxSystem> {
        let n = cartan.len();
        let mut cox = vec![vec![1u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cox[i][j] = coxeter_entry(cartan[i][j], cartan[j][i]).ok_or_else(|| {
                        Error::MalformedSpec(format!("Cartan pair ({}, {}) is not crystallographic", cartan[i][j], cartan[j][i]))
                    })?;
                }
            }
        }
        let c = classify(&cartan, &cox);
        let (kind, affine) = match c.affine {
            Some(shape) => {
                let base = shape
                    .special
                    .iter()
                    .copied()
                    .find(|&o| shape.null_vector[o] == 1)
                    .ok_or_else(|| Error::MalformedSpec("affine system without a special vertex of mark 1".into()))?;
                let data = AffineData {
                    null_vector: shape.null_vector,
                    special_vertices: shape.special,
                    base_vertex: base,
                    gem_type: shape.gem_type,
                };
                (Kind::Affine, Some(data))
            }
            None if c.spherical => (Kind::Spherical, None),
            None => (Kind::Other, None),
        };
        let reflections = (0..n)
            .map(|i| {
                let mut m = IntMatrix::identity(n);
                for j in 0..n {
                    m.set(i, j, m.get(i, j) - cartan[i][j]);
                }
                m
            })
            .collect();
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        cartan.hash(&mut h);
        Ok(CoxSystem { id: h.finish(), name, labels, coxeter: cox, cartan, kind, affine, reflections })
    }

    #[inline]
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn generator_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    /// `m_st`, with [`M_INF`] for ∞.
    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.coxeter[s][t]
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn affine_data(&self) -> Option<&AffineData> {
        self.affine.as_ref()
    }

    pub(crate) fn require_affine(&self) -> Result<&AffineData> {
        self.affine.as_ref().ok_or(Error::NotAffine)
    }

    /// Order of the parabolic subgroup `<J>`, `None` if infinite.
    pub fn parabolic_order(&self, types: &[usize]) -> Option<u128> {
        parabolic_order(&self.coxeter, types)
    }

    /// Name of the spherical type of `<J>`, e.g. `A1xA1`.
    pub fn parabolic_type_name(&self, types: &[usize]) -> Option<String> {
        parabolic_types(&self.coxeter, types).map(|t| diagram::type_name(&t))
    }

    /// Coxeter number of the gem type, or of the system itself when spherical
    /// and irreducible.
    pub fn coxeter_number(&self) -> Option<u64> {
        if let Some(a) = &self.affine {
            return Some(a.gem_type.coxeter_number());
        }
        let all: Vec<usize> = (0..self.rank()).collect();
        match parabolic_types(&self.coxeter, &all)?.as_slice() {
            [t] => Some(t.coxeter_number()),
            _ => None,
        }
    }

    pub(crate) fn reflection(&self, s: usize) -> &IntMatrix {
        &self.reflections[s]
    }

    /// `<α_i^∨, β>` for every i.
    pub(crate) fn coroot_pairings(&self, beta: &[i64]) -> Vec<i64> {
        self.cartan.iter().map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum()).collect()
    }

    pub(crate) fn check(&self, id: u64) -> Result<()> {
        if id == self.id {
            Ok(())
        } else {
            Err(Error::SystemMismatch)
        }
    }
}

/// An affine Cartan matrix is untwisted at a special vertex `o` with mark 1
/// when the row and column of `o` are those of `α_o = δ − θ` for the
/// highest root θ of the remaining finite system.
fn is_untwisted(a: &[Vec<i64>], delta: &[i64], special: &[usize]) -> bool {
    let n = a.len();
    special.iter().any(|&o| {
        if delta[o] != 1 {
            return false;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| i != o).collect();
        let fin: Vec<Vec<i64>> = rest.iter().map(|&i| rest.iter().map(|&j| a[i][j]).collect()).collect();
        let (aff, d) = affinize(&fin);
        let delta_ok = rest.iter().enumerate().all(|(k, &i)| d[k + 1] == delta[i]);
        delta_ok
            && rest
                .iter()
                .enumerate()
                .all(|(k, &i)| aff[0][k + 1] == a[o][i] && aff[k + 1][0] == a[i][o])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_a2_has_three_special_vertices() {
        let sys = build_system("A~2").unwrap();
        assert_eq!(sys.rank(), 3);
        assert_eq!(sys.kind(), Kind::Affine);
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(sys.m(s, t), if s == t { 1 } else { 3 });
            }
        }
        assert_eq!(sys.affine_data().unwrap().special_vertices, vec![0, 1, 2]);
    }

    #[test]
    fn a1_is_spherical_rank_one() {
        let sys = build_system("A1").unwrap();
        assert_eq!(sys.rank(), 1);
        assert_eq!(sys.kind(), Kind::Spherical);
        assert!(sys.affine_data().is_none());
    }

    #[test]
    fn affine_a1_null_vector_and_cartan() {
        let sys = build_system("A~1").unwrap();
        assert_eq!(sys.kind(), Kind::Affine);
        assert_eq!(sys.m(0, 1), M_INF);
        assert_eq!(sys.cartan()[0][1], -2);
        assert_eq!(sys.cartan()[1][0], -2);
        let a = sys.affine_data().unwrap();
        assert_eq!(a.null_vector, vec![1, 1]);
        assert_eq!(a.special_vertices, vec![0, 1]);
    }

    #[test]
    fn special_vertices_of_non_simply_laced_types() {
        let c2 = build_system("C~2").unwrap();
        assert_eq!(c2.affine_data().unwrap().special_vertices, vec![0, 2]);
        let g2 = build_system("G~2").unwrap();
        assert_eq!(g2.affine_data().unwrap().special_vertices, vec![0]);
        let b3 = build_system("B~3").unwrap();
        assert_eq!(b3.affine_data().unwrap().special_vertices, vec![0, 1]);
        let d4 = build_system("D~4").unwrap();
        assert_eq!(d4.affine_data().unwrap().special_vertices.len(), 4);
        let f4 = build_system("F~4").unwrap();
        assert_eq!(f4.affine_data().unwrap().gem_type.order(), 1152);
    }

    #[test]
    fn cartan_pairs_are_consistent_with_coxeter_matrix() {
        for spec in ["A~1", "A~2", "A~3", "B~3", "C~2", "C~3", "D~4", "G~2", "F~4", "E~6", "A3", "B3", "G2"] {
            let sys = build_system(spec).unwrap();
            let n = sys.rank();
            for s in 0..n {
                assert_eq!(sys.cartan()[s][s], 2);
                for t in 0..n {
                    if s == t {
                        continue;
                    }
                    let pair = (sys.cartan()[s][t], sys.cartan()[t][s]);
                    let expected = match pair {
                        (0, 0) => 2,
                        (-1, -1) => 3,
                        (-1, -2) | (-2, -1) => 4,
                        (-1, -3) | (-3, -1) => 6,
                        (-2, -2) => M_INF,
                        other => panic!("{spec}: unexpected pair {other:?}"),
                    };
                    assert_eq!(sys.m(s, t), expected, "{spec} ({s},{t})");
                }
            }
            if let Some(a) = sys.affine_data() {
                let cd = sys.coroot_pairings(&a.null_vector);
                assert!(cd.iter().all(|&x| x == 0), "{spec}: C·δ ≠ 0");
                assert!(a.null_vector.iter().all(|&x| x > 0));
            }
        }
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(matches!(build_system("Q3"), Err(Error::MalformedSpec(_))));
        assert!(matches!(build_system("A~"), Err(Error::MalformedSpec(_))));
        assert!(matches!(build_system("G3"), Err(Error::MalformedSpec(_))));
        assert!(matches!(build_system(""), Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn json_matrix_input() {
        let sys = build_system(r#"{"generators":["a","b","c"],"m":[[1,3,3],[3,1,3],[3,3,1]]}"#).unwrap();
        assert_eq!(sys.kind(), Kind::Affine);
        assert_eq!(sys.label(1), "b");

        let err = build_system(r#"{"generators":["a","b"],"m":[[1,5],[5,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::NonCrystallographic { m: 5, .. }));
        let err = build_system(r#"{"generators":["a","b"],"m":[[1,3],[4,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::AsymmetricMatrix { .. }));

        let tree = build_system(r#"{"generators":["x","y"],"m":[[1,null],[null,1]]}"#).unwrap();
        assert_eq!(tree.kind(), Kind::Affine);
        assert_eq!(tree.affine_data().unwrap().null_vector, vec![1, 1]);
    }

    #[test]
    fn json_c2_gets_untwisted_orientation() {
        let sys = build_system(r#"{"generators":["a","b","c"],"m":[[1,4,2],[4,1,4],[2,4,1]]}"#).unwrap();
        let a = sys.affine_data().unwrap();
        assert_eq!(a.special_vertices, vec![0, 2]);
        assert_eq!(a.null_vector[a.base_vertex], 1);
        assert_eq!(a.null_vector.iter().filter(|&&x| x == 1).count(), 2);
    }

    #[test]
    fn hyperbolic_diagram_is_other() {
        let sys = build_system(r#"{"generators":["a","b","c"],"m":[[1,3,4],[3,1,3],[4,3,1]]}"#).unwrap();
        assert_eq!(sys.kind(), Kind::Other);
    }
}
