//! Gems, sectors, parallel classes of roots and translations of an affine
//! Coxeter complex.
//!
//! Write `o` for the base special vertex of the system. Every real root
//! decomposes as `β = β̄ + kδ` where `β̄` has no `α_o` component; two roots
//! are parallel (as nested half-spaces) iff they share `β̄`, and the one
//! with larger `k` is the larger half-space.
//!
//! Translations are indexed by the coroot lattice, with basis the coroots
//! `α_i^∨` for `i ≠ o`. For `μ = Σ m_i α_i^∨` the translation acts on roots
//! by `t_μ(β) = β − <μ, β>δ`.

use std::collections::HashSet;

use num_integer::Integer;

use crate::chamber::{ResidueRef, RESIDUE_LIMIT};
use crate::coxeter::{CoxSystem, Elem, RootVec};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Q};

/// A residue of type `S ∖ {o}` for a special vertex `o`.
#[derive(Clone, Debug)]
pub struct Gem {
    special: usize,
    types: Vec<usize>,
    base: Elem,
    chambers: Vec<Elem>,
    longest: Elem,
}

impl Gem {
    pub fn special_vertex(&self) -> usize {
        self.special
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn base(&self) -> &Elem {
        &self.base
    }

    pub fn chambers(&self) -> &[Elem] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn residue(&self) -> ResidueRef {
        ResidueRef::new(self.types.iter().copied(), self.base.clone())
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.chambers.contains(x)
    }
}

/// The sector `σ(R, c)`, bounded by the roots `[R, c]`.
#[derive(Clone, Debug)]
pub struct SectorRef {
    gem: Gem,
    apex: Elem,
    walls: Vec<RootVec>,
}

impl SectorRef {
    pub fn gem(&self) -> &Gem {
        &self.gem
    }

    pub fn apex(&self) -> &Elem {
        &self.apex
    }

    /// `[R, c] = {c(α_s) : s ∈ S ∖ {o}}`, in generator order.
    pub fn walls(&self) -> &[RootVec] {
        &self.walls
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorMode {
    RootIntersection,
    Projection,
}

/// A translation together with its coroot-lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranslationElem {
    pub elem: Elem,
    pub lattice: Vec<i64>,
}

impl CoxSystem {
    fn base_vertex(&self) -> Result<usize> {
        Ok(self.require_affine()?.base_vertex)
    }

    fn null_vector(&self) -> Result<&[i64]> {
        Ok(&self.require_affine()?.null_vector)
    }

    fn lattice_indices(&self) -> Result<Vec<usize>> {
        let o = self.base_vertex()?;
        Ok((0..self.rank()).filter(|&i| i != o).collect())
    }

    /// Gem of type `S ∖ {o}` containing `x`.
    pub fn make_gem(&self, o: usize, x: &Elem) -> Result<Gem> {
        self.make_gem_with_limit(o, x, RESIDUE_LIMIT)
    }

    pub fn make_gem_with_limit(&self, o: usize, x: &Elem, limit: u64) -> Result<Gem> {
        let data = self.require_affine()?;
        self.check(x.system_id())?;
        if o >= self.rank() {
            return Err(Error::UnknownGenerator(o.to_string()));
        }
        if !data.special_vertices.contains(&o) {
            return Err(Error::NotSpecialVertex(self.label(o).to_string()));
        }
        let types: Vec<usize> = (0..self.rank()).filter(|&s| s != o).collect();
        let chambers = self.residue_chambers(&ResidueRef::new(types.iter().copied(), x.clone()), limit)?;
        let longest = self.dist(x, chambers.last().expect("residue is nonempty"));
        Ok(Gem { special: o, types, base: x.clone(), chambers, longest })
    }

    /// The gem at the identity for each special vertex.
    pub fn gems(&self) -> Result<Vec<Gem>> {
        let data = self.require_affine()?;
        data.special_vertices.iter().map(|&o| self.make_gem(o, &self.identity())).collect()
    }

    pub fn sector(&self, gem: &Gem, apex: &Elem) -> Result<SectorRef> {
        self.check(apex.system_id())?;
        if !gem.contains(apex) {
            return Err(Error::NotInGem);
        }
        let walls = gem.types.iter().map(|&s| self.act(apex, &self.simple_root(s))).collect();
        Ok(SectorRef { gem: gem.clone(), apex: apex.clone(), walls })
    }

    pub fn sector_membership(&self, sigma: &SectorRef, d: &Elem, mode: SectorMode) -> bool {
        match mode {
            SectorMode::RootIntersection => {
                let di = self.inv(d);
                sigma.walls.iter().all(|a| self.act(&di, a).is_positive())
            }
            SectorMode::Projection => self.proj(&sigma.gem.residue(), d).map(|z| z == sigma.apex).unwrap_or(false),
        }
    }

    /// The chamber of the gem opposite `c`.
    pub fn opposite_in_gem(&self, gem: &Gem, c: &Elem) -> Result<Elem> {
        if !gem.contains(c) {
            return Err(Error::NotInGem);
        }
        Ok(self.mul(c, &gem.longest))
    }

    /// `Φ_R`: roots whose wall passes through a panel of the gem. Canonical
    /// root order.
    pub fn roots_cutting_gem(&self, gem: &Gem) -> Vec<RootVec> {
        let mut set: HashSet<RootVec> = HashSet::new();
        for u in &gem.chambers {
            for &s in &gem.types {
                let r = self.act(u, &self.simple_root(s));
                set.insert(r.neg());
                set.insert(r);
            }
        }
        let mut out: Vec<RootVec> = set.into_iter().collect();
        out.sort();
        out
    }

    /// `β − β_o δ`: the finite direction of a root.
    pub fn finite_part(&self, beta: &RootVec) -> Result<Vec<i64>> {
        let o = self.base_vertex()?;
        let d = self.null_vector()?;
        let k = beta.coords()[o];
        Ok(beta.coords().iter().zip(d).map(|(b, e)| b - k * e).collect())
    }

    /// `k` with `β₂ = β₁ + kδ`; positive when `β₂ ⊋ β₁`.
    pub fn parallel_dist(&self, b1: &RootVec, b2: &RootVec) -> Result<i64> {
        self.check(b1.system_id())?;
        self.check(b2.system_id())?;
        let d = self.null_vector()?;
        let diff: Vec<i64> = b2.coords().iter().zip(b1.coords()).map(|(x, y)| x - y).collect();
        let o = self.base_vertex()?;
        let k = diff[o];
        if diff.iter().zip(d).all(|(x, e)| *x == k * e) {
            Ok(k)
        } else {
            Err(Error::NotParallel(b1.coords().to_vec(), b2.coords().to_vec()))
        }
    }

    /// `β + kδ`, which must again be a root.
    pub fn shift_root(&self, beta: &RootVec, k: i64) -> Result<RootVec> {
        let d = self.null_vector()?;
        let v = beta.coords().iter().zip(d).map(|(b, e)| b + k * e).collect();
        self.root(v)
    }

    /// `γ′ = conv(γ ∪ {c})`: the smallest root parallel to `γ` containing
    /// both `γ` and `c`.
    pub fn pushed_root(&self, gamma: &RootVec, c: &Elem) -> Result<RootVec> {
        self.check(gamma.system_id())?;
        self.check(c.system_id())?;
        let d = self.null_vector()?;
        let v = self.act(&self.inv(c), gamma);
        let k = v
            .coords()
            .iter()
            .zip(d)
            .map(|(&x, &e)| if x < 0 { Integer::div_ceil(&-x, &e) } else { 0 })
            .max()
            .unwrap_or(0);
        let pushed = self.shift_root(gamma, k)?;
        debug_assert!(self.root_contains(&pushed, c));
        Ok(pushed)
    }

    /// `(<α_i^∨, β>)_{i ≠ o}`; with lattice coordinates `m`, the
    /// translation `t_m` moves `β` by `−m·p(β)` parallel steps.
    pub fn lattice_pairing(&self, beta: &RootVec) -> Result<Vec<i64>> {
        let idx = self.lattice_indices()?;
        let p = self.coroot_pairings(beta.coords());
        Ok(idx.iter().map(|&i| p[i]).collect())
    }

    /// Recognizes translations by `w(α_s) − α_s ∈ ℤδ` for all `s`.
    pub fn translation_test(&self, w: &Elem) -> Result<Option<TranslationElem>> {
        self.check(w.system_id())?;
        let d = self.null_vector()?.to_vec();
        let idx = self.lattice_indices()?;
        let n = self.rank();
        let mut offsets = Vec::with_capacity(n);
        for s in 0..n {
            let mut col = w.simple_image(s);
            col[s] -= 1;
            let k = col.iter().zip(&d).find(|(_, &e)| e != 0).map_or(0, |(x, e)| x / e);
            if col.iter().zip(&d).any(|(x, e)| *x != k * e) {
                return Ok(None);
            }
            offsets.push(k);
        }
        // offsets_j = −Σ_i m_i a_ij over i ≠ o; solve on the columns j ≠ o
        let a = self.cartan();
        let system: Vec<Vec<i64>> = idx.iter().map(|&j| idx.iter().map(|&i| a[i][j]).collect()).collect();
        let rhs: Vec<i64> = idx.iter().map(|&j| -offsets[j]).collect();
        let Some(m) = linalg::solve(&system, &rhs) else {
            return Ok(None);
        };
        if !linalg::is_integral(&m) {
            return Ok(None);
        }
        let lattice = m.iter().map(|x| x.to_integer() as i64).collect();
        Ok(Some(TranslationElem { elem: w.clone(), lattice }))
    }

    /// The translation with coroot-lattice coordinates `m`: matrix
    /// `I + δ nᵀ` with `n_j = −Σ_i m_i a_ij`.
    pub fn translation_from_lattice(&self, m: &[i64]) -> Result<TranslationElem> {
        let d = self.null_vector()?.to_vec();
        let idx = self.lattice_indices()?;
        if m.len() != idx.len() {
            return Err(Error::MalformedSpec(format!("lattice vector needs {} coordinates", idx.len())));
        }
        let a = self.cartan();
        let r = self.rank();
        let ncol: Vec<i64> = (0..r).map(|j| -idx.iter().zip(m).map(|(&i, &mi)| mi * a[i][j]).sum::<i64>()).collect();
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j) + d[i] * ncol[j]).collect())
            .collect();
        let elem = self.elem_from_matrix(IntMatrix::from_rows(&rows))?;
        Ok(TranslationElem { elem, lattice: m.to_vec() })
    }

    /// All translations with lattice coordinates in `[−bound, bound]`,
    /// lexicographic in the coordinates.
    pub fn enumerate_translations(&self, bound: i64) -> Result<Vec<TranslationElem>> {
        let dim = self.lattice_indices()?.len();
        let mut out = Vec::new();
        let mut m = vec![-bound; dim];
        loop {
            out.push(self.translation_from_lattice(&m)?);
            let mut i = dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if m[i] < bound {
                    m[i] += 1;
                    break;
                }
                m[i] = -bound;
            }
        }
    }

    /// Lattice generators `α_i^∨`, `i ≠ o`.
    pub fn lattice_basis(&self) -> Result<Vec<TranslationElem>> {
        let dim = self.lattice_indices()?.len();
        (0..dim)
            .map(|k| {
                let mut m = vec![0; dim];
                m[k] = 1;
                self.translation_from_lattice(&m)
            })
            .collect()
    }

    pub fn compose_translations(&self, a: &TranslationElem, b: &TranslationElem) -> TranslationElem {
        TranslationElem {
            elem: self.mul(&a.elem, &b.elem),
            lattice: a.lattice.iter().zip(&b.lattice).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn invert_translation(&self, t: &TranslationElem) -> TranslationElem {
        TranslationElem { elem: self.inv(&t.elem), lattice: t.lattice.iter().map(|x| -x).collect() }
    }

    fn wall_position(&self, sigma: &SectorRef, alpha: &RootVec) -> Result<usize> {
        self.check(alpha.system_id())?;
        sigma
            .walls
            .iter()
            .position(|w| w == alpha)
            .ok_or_else(|| Error::NotASectorWall(alpha.coords().to_vec()))
    }

    /// `t_{R,c,α}`: fixes every other root of `[R, c]` and shrinks `α` by the
    /// fewest parallel steps. The constraints cut out a ray in the coroot
    /// lattice; its primitive lattice point is the answer.
    pub fn fundamental_translation(&self, sigma: &SectorRef, alpha: &RootVec) -> Result<TranslationElem> {
        let pos = self.wall_position(sigma, alpha)?;
        let rows: Vec<Vec<i64>> = sigma.walls.iter().map(|w| self.lattice_pairing(w)).collect::<Result<_>>()?;
        let rhs: Vec<i64> = (0..rows.len()).map(|i| i64::from(i == pos)).collect();
        let ray = linalg::solve(&rows, &rhs).expect("sector walls give a basis of the finite root system");
        let den = linalg::common_denominator(&ray);
        let scaled: Vec<i128> = ray.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect();
        let g = scaled.iter().fold(0i128, |acc, x| acc.gcd(x));
        let m: Vec<i64> = scaled.iter().map(|x| (x / g) as i64).collect();
        let t = self.translation_from_lattice(&m)?;
        debug_assert!(self.parallel_dist(alpha, &self.act(&t.elem, alpha))? < 0);
        Ok(t)
    }

    /// Brute-force variant of [`CoxSystem::fundamental_translation`] over
    /// lattice coordinates in `[−bound, bound]`.
    pub fn fundamental_translation_by_search(&self, sigma: &SectorRef, alpha: &RootVec, bound: i64) -> Result<TranslationElem> {
        self.wall_position(sigma, alpha)?;
        let mut best: Option<(i64, TranslationElem)> = None;
        for t in self.enumerate_translations(bound)? {
            let fixes_others = sigma.walls.iter().filter(|w| *w != alpha).all(|w| self.act(&t.elem, w) == *w);
            if !fixes_others {
                continue;
            }
            let shift = self.parallel_dist(alpha, &self.act(&t.elem, alpha))?;
            if shift < 0 && best.as_ref().is_none_or(|(b, _)| shift > *b) {
                best = Some((shift, t));
            }
        }
        best.map(|(_, t)| t).ok_or(Error::SearchBoundExceeded(bound))
    }

    /// Default search bound `2h` for the gem type's Coxeter number `h`.
    pub fn default_translation_bound(&self) -> Result<i64> {
        Ok(2 * self.require_affine()?.gem_type.coxeter_number() as i64)
    }

    /// `t_{R,c} = ∏_{α ∈ [R,c]} t_{R,c,α}`.
    pub fn sector_translation(&self, sigma: &SectorRef) -> Result<TranslationElem> {
        let mut acc = self.translation_from_lattice(&vec![0; self.lattice_indices()?.len()])?;
        for a in &sigma.walls {
            acc = self.compose_translations(&acc, &self.fundamental_translation(sigma, a)?);
        }
        Ok(acc)
    }

    /// Parallel steps by which `t` moves `β`: `parallel_dist(β, t(β))`.
    pub fn translation_shift(&self, t: &TranslationElem, beta: &RootVec) -> Result<i64> {
        let p = self.lattice_pairing(beta)?;
        Ok(-t.lattice.iter().zip(&p).map(|(m, x)| m * x).sum::<i64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_system;

    fn e(sys: &CoxSystem, w: &str) -> Elem {
        sys.parse_elem(w).unwrap()
    }

    #[test]
    fn gem_sizes() {
        let a2 = build_system("A~2").unwrap();
        assert_eq!(a2.make_gem(0, &a2.identity()).unwrap().len(), 6);
        let a1 = build_system("A~1").unwrap();
        let g = a1.make_gem(0, &a1.identity()).unwrap();
        assert_eq!(g.chambers(), &[a1.identity(), a1.generator(1)]);
        let c2 = build_system("C~2").unwrap();
        for g in c2.gems().unwrap() {
            assert_eq!(g.len(), 8);
        }
        assert!(matches!(c2.make_gem(1, &c2.identity()), Err(Error::NotSpecialVertex(_))));
        let fin = build_system("A2").unwrap();
        assert!(matches!(fin.make_gem(0, &fin.identity()), Err(Error::NotAffine)));
    }

    #[test]
    fn cutting_root_counts() {
        for (ty, n) in [("A~1", 2), ("A~2", 6), ("C~2", 8), ("G~2", 12), ("A~3", 12)] {
            let sys = build_system(ty).unwrap();
            for g in sys.gems().unwrap() {
                assert_eq!(sys.roots_cutting_gem(&g).len(), n, "{ty}");
            }
        }
    }

    #[test]
    fn parallel_distance_on_the_line() {
        let sys = build_system("A~1").unwrap();
        // α_1 = (0,1) is the half-line of chambers on the identity side of
        // the wall between 1 and s1; shifting by −δ shrinks it.
        let b = sys.simple_root(1);
        let smaller = sys.shift_root(&b, -2).unwrap();
        assert_eq!(sys.parallel_dist(&b, &b).unwrap(), 0);
        assert_eq!(sys.parallel_dist(&b, &smaller).unwrap(), -2);
        assert_eq!(sys.parallel_dist(&smaller, &b).unwrap(), 2);
        assert!(matches!(sys.parallel_dist(&b, &b.neg()), Err(Error::NotParallel(..))));
    }

    #[test]
    fn translation_recognition() {
        let a1 = build_system("A~1").unwrap();
        let id = a1.translation_test(&a1.identity()).unwrap().unwrap();
        assert_eq!(id.lattice, vec![0]);
        let t = a1.translation_test(&e(&a1, "s0 s1")).unwrap().unwrap();
        assert_eq!(t.lattice, vec![1]);
        assert_eq!(t.elem.matrix().rows(), vec![vec![3, -2], vec![2, -1]]);
        let a2 = build_system("A~2").unwrap();
        assert!(a2.translation_test(&a2.generator(0)).unwrap().is_none());
        let fin = build_system("A2").unwrap();
        assert!(matches!(fin.translation_test(&fin.identity()), Err(Error::NotAffine)));
    }

    #[test]
    fn lattice_round_trip() {
        for ty in ["A~2", "C~2", "G~2"] {
            let sys = build_system(ty).unwrap();
            for t in sys.enumerate_translations(2).unwrap() {
                let back = sys.translation_test(&t.elem).unwrap().unwrap();
                assert_eq!(back.lattice, t.lattice);
            }
        }
    }

    #[test]
    fn fundamental_translation_on_the_line() {
        let sys = build_system("A~1").unwrap();
        let gem = sys.make_gem(0, &sys.identity()).unwrap();
        let sigma = sys.sector(&gem, &sys.identity()).unwrap();
        let alpha = sigma.walls()[0].clone();
        let t = sys.fundamental_translation(&sigma, &alpha).unwrap();
        assert_eq!(sys.parallel_dist(&alpha, &sys.act(&t.elem, &alpha)).unwrap(), -2);
        assert_eq!(sys.sector_translation(&sigma).unwrap(), t);
        assert!(matches!(sys.fundamental_translation(&sigma, &alpha.neg()), Err(Error::NotASectorWall(_))));
    }

    #[test]
    fn pushed_roots() {
        let sys = build_system("A~1").unwrap();
        let b = sys.simple_root(1);
        assert_eq!(sys.pushed_root(&b, &sys.identity()).unwrap(), b);
        let far = sys.shift_root(&b, -2).unwrap();
        assert_eq!(sys.pushed_root(&far, &sys.identity()).unwrap(), b);
    }
}
