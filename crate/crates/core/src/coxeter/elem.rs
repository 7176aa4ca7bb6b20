use std::cmp::Ordering;
use std::fmt;

use super::CoxSystem;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Element of W, equivalently a chamber of the Coxeter complex Σ(W, S).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem {
    sys: u64,
    mat: IntMatrix,
}

impl Elem {
    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn system_id(&self) -> u64 {
        self.sys
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// `w(α_s)`: the image of a simple root is the `s`-th column.
    pub(crate) fn simple_image(&self, s: usize) -> Vec<i64> {
        self.mat.column(s)
    }

    /// `s` is a right descent iff `w(α_s)` is negative.
    pub(crate) fn has_right_descent(&self, s: usize) -> bool {
        let n = self.mat.dim();
        (0..n).map(|i| self.mat.get(i, s)).find(|&x| x != 0).is_some_and(|x| x < 0)
    }

    fn right_mul_gen(&mut self, a_row: &[i64], s: usize) {
        // w·s_s: column k ← column k − a_sk · column s
        let n = self.mat.dim();
        let col: Vec<i64> = self.mat.column(s);
        for (k, &ask) in a_row.iter().enumerate() {
            if ask == 0 {
                continue;
            }
            for i in 0..n {
                let v = self.mat.get(i, k) - ask * col[i];
                self.mat.set(i, k, v);
            }
        }
    }
}

/// Sequence of generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

/// A root of Σ(W, S) stored as a sign-pure integer vector in the simple-root
/// basis. The half-space it names is `{w : w⁻¹(β) > 0}`; positive vectors
/// contain the identity chamber.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootVec {
    sys: u64,
    v: Vec<i64>,
}

impl RootVec {
    pub fn coords(&self) -> &[i64] {
        &self.v
    }

    pub fn system_id(&self) -> u64 {
        self.sys
    }

    pub fn is_positive(&self) -> bool {
        sign_of(&self.v) > 0
    }

    pub fn height(&self) -> i64 {
        self.v.iter().sum()
    }

    /// The opposite root `−α = W ∖ α`.
    pub fn neg(&self) -> RootVec {
        RootVec { sys: self.sys, v: self.v.iter().map(|x| -x).collect() }
    }

    /// Positive representative of the wall `∂α`.
    pub fn wall(&self) -> RootVec {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }
}

impl Ord for RootVec {
    fn cmp(&self, other: &Self) -> Ordering {
        // positive roots first, then by |height|, then coordinates
        (!self.is_positive(), self.height().abs(), &self.v).cmp(&(!other.is_positive(), other.height().abs(), &other.v))
    }
}

impl PartialOrd for RootVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.v.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// +1, −1, or 0 for a sign-pure vector; 0 also flags mixed signs.
pub(crate) fn sign_of(v: &[i64]) -> i64 {
    let pos = v.iter().any(|&x| x > 0);
    let neg = v.iter().any(|&x| x < 0);
    match (pos, neg) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Group automorphism of W induced by a Coxeter diagram automorphism.
#[derive(Clone, Debug)]
pub struct DiagramAutomorphism {
    sys: u64,
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Relabels a reduced word of `w` letter by letter.
    pub fn apply(&self, sys: &CoxSystem, w: &Elem) -> Result<Elem> {
        sys.check(self.sys)?;
        sys.check(w.sys)?;
        let word = sys.reduced_word(w);
        Ok(sys.elem_from_word(&Word(word.0.iter().map(|&s| self.perm[s]).collect())))
    }

    pub fn inverse(&self) -> DiagramAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { sys: self.sys, perm: inv }
    }
}

const MAX_DESCENT_STEPS: usize = 1 << 20;

impl CoxSystem {
    pub fn identity(&self) -> Elem {
        Elem { sys: self.id, mat: IntMatrix::identity(self.rank()) }
    }

    pub fn generator(&self, s: usize) -> Elem {
        Elem { sys: self.id, mat: self.reflection(s).clone() }
    }

    pub fn simple_root(&self, s: usize) -> RootVec {
        let mut v = vec![0; self.rank()];
        v[s] = 1;
        RootVec { sys: self.id, v }
    }

    /// Wraps a raw matrix after checking constructively that it is a product
    /// of simple reflections (descent must reach the identity).
    pub fn elem_from_matrix(&self, mat: IntMatrix) -> Result<Elem> {
        if mat.dim() != self.rank() {
            return Err(Error::NotInGroup);
        }
        let mut w = Elem { sys: self.id, mat };
        let orig = w.clone();
        for _ in 0..MAX_DESCENT_STEPS {
            if w.is_identity() {
                return Ok(orig);
            }
            let Some(s) = (0..self.rank()).find(|&s| w.has_right_descent(s)) else {
                return Err(Error::NotInGroup);
            };
            w.right_mul_gen(&self.cartan()[s], s);
        }
        Err(Error::NotInGroup)
    }

    pub fn elem_from_word(&self, word: &Word) -> Elem {
        let mut w = self.identity();
        for &s in &word.0 {
            w.right_mul_gen(&self.cartan()[s], s);
        }
        w
    }

    /// Parses a whitespace-separated list of generator labels; the empty
    /// string (or `1`, `e`, `id`) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if matches!(t, "" | "1" | "e" | "id") {
            return Ok(Word::default());
        }
        t.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.')
            .filter(|x| !x.is_empty())
            .map(|l| self.generator_index(l))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.0.iter().map(|&s| self.label(s)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        Ok(self.elem_from_word(&self.parse_word(text)?))
    }

    pub fn format_elem(&self, w: &Elem) -> String {
        self.format_word(&self.reduced_word(w))
    }

    pub fn multiply(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x.sys)?;
        self.check(y.sys)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        Elem { sys: self.id, mat: x.mat.mul(&y.mat) }
    }

    pub(crate) fn mul_gen(&self, x: &Elem, s: usize) -> Elem {
        let mut w = x.clone();
        w.right_mul_gen(&self.cartan()[s], s);
        w
    }

    pub fn inverse(&self, x: &Elem) -> Result<Elem> {
        self.check(x.sys)?;
        Ok(self.inv(x))
    }

    /// Strips right descents `w → w s₁ → w s₁ s₂ → … → 1`; then
    /// `w⁻¹ = s₁ s₂ ⋯ s_k`.
    pub(crate) fn inv(&self, x: &Elem) -> Elem {
        let seq = self.right_descent_sequence(x);
        self.elem_from_word(&Word(seq))
    }

    fn right_descent_sequence(&self, x: &Elem) -> Vec<usize> {
        let mut w = x.clone();
        let mut seq = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| w.has_right_descent(s)) {
            w.right_mul_gen(&self.cartan()[s], s);
            seq.push(s);
        }
        debug_assert!(w.is_identity());
        seq
    }

    pub fn length(&self, w: &Elem) -> usize {
        self.right_descent_sequence(w).len()
    }

    /// Left descents `{s : ℓ(sw) < ℓ(w)}`, i.e. `w⁻¹(α_s) < 0`.
    pub fn descents(&self, w: &Elem) -> Vec<usize> {
        let u = self.inv(w);
        (0..self.rank()).filter(|&s| u.has_right_descent(s)).collect()
    }

    /// Right descents `{s : ℓ(ws) < ℓ(w)}`, i.e. `w(α_s) < 0`.
    pub fn right_descents(&self, w: &Elem) -> Vec<usize> {
        (0..self.rank()).filter(|&s| w.has_right_descent(s)).collect()
    }

    /// Lexicographically smallest reduced word: repeatedly strip the
    /// smallest left descent.
    pub fn reduced_word(&self, w: &Elem) -> Word {
        let mut u = self.inv(w);
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| u.has_right_descent(s)) {
            word.push(s);
            u.right_mul_gen(&self.cartan()[s], s);
        }
        Word(word)
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        self.length(&self.elem_from_word(word)) == word.len()
    }

    /// Sort key of the canonical order: length, then lexicographic reduced word.
    pub fn canonical_key(&self, w: &Elem) -> (usize, Word) {
        let word = self.reduced_word(w);
        (word.len(), word)
    }

    pub fn canonical_sort(&self, elems: &mut Vec<Elem>) {
        let mut keyed: Vec<((usize, Word), Elem)> = elems.drain(..).map(|e| (self.canonical_key(&e), e)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        elems.extend(keyed.into_iter().map(|(_, e)| e));
    }

    /// Validates a vector as a real root: it must be sign-pure and reduce to
    /// a simple root by height-decreasing simple reflections.
    pub fn root(&self, v: Vec<i64>) -> Result<RootVec> {
        if v.len() != self.rank() || self.root_reduction(&v).is_none() {
            return Err(Error::NotARootVector(v));
        }
        Ok(RootVec { sys: self.id, v })
    }

    /// Returns `(u, s)` with `v = ±u(α_s)`, or `None` when `v` is not a real
    /// root. The wall of `v` contains the `s`-panel `{u, us}`.
    pub(crate) fn root_reduction(&self, v: &[i64]) -> Option<(Word, usize)> {
        let sign = sign_of(v);
        if sign == 0 {
            return None;
        }
        let mut b: Vec<i64> = v.iter().map(|x| x * sign).collect();
        let mut path = Vec::new();
        loop {
            if b.iter().sum::<i64>() == 1 {
                let s = b.iter().position(|&x| x == 1)?;
                // s_{i1} … s_{ik} applied in that order reach α_s, so
                // v = ±(s_{i1} ⋯ s_{ik})(α_s)
                return Some((Word(path), s));
            }
            let pairings = self.coroot_pairings(&b);
            let i = pairings.iter().position(|&c| c > 0)?;
            b[i] -= pairings[i];
            if sign_of(&b) <= 0 {
                return None;
            }
            path.push(i);
        }
    }

    /// Generator type of the panels in the wall of `β`.
    pub fn wall_type(&self, beta: &RootVec) -> usize {
        self.root_reduction(&beta.v).expect("RootVec is validated on creation").1
    }

    pub fn act_on_root(&self, w: &Elem, beta: &RootVec) -> Result<RootVec> {
        self.check(w.sys)?;
        self.check(beta.sys)?;
        Ok(self.act(w, beta))
    }

    pub(crate) fn act(&self, w: &Elem, beta: &RootVec) -> RootVec {
        let v = w.mat.apply(&beta.v);
        debug_assert_ne!(sign_of(&v), 0, "image of a root must be sign-pure");
        RootVec { sys: self.id, v }
    }

    /// Checks that `σ` preserves the Coxeter matrix and returns the induced
    /// automorphism of W.
    pub fn extend_diagram_automorphism(&self, perm: &[usize]) -> Result<DiagramAutomorphism> {
        let n = self.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::MalformedSpec("diagram automorphism must be a permutation of the generators".into()));
        }
        for s in 0..n {
            for t in 0..n {
                if self.m(perm[s], perm[t]) != self.m(s, t) {
                    return Err(Error::NotDiagramCompatible {
                        s: self.label(s).to_string(),
                        t: self.label(t).to_string(),
                    });
                }
            }
        }
        Ok(DiagramAutomorphism { sys: self.id, perm: perm.to_vec() })
    }
}
