//! The Coxeter complex Σ(W, S): chambers are group elements, the Weyl
//! distance is `δ(x, y) = x⁻¹y`, residues are cosets of standard parabolics.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::coxeter::{CoxSystem, Elem, RootVec, Word};
use crate::error::{Error, Result};

/// Default guard on the size of an enumerated residue.
pub const RESIDUE_LIMIT: u64 = 1152;

/// The `J`-residue containing `base`.
#[derive(Clone, Debug)]
pub struct ResidueRef {
    pub types: Vec<usize>,
    pub base: Elem,
}

impl ResidueRef {
    pub fn new(types: impl IntoIterator<Item = usize>, base: Elem) -> Self {
        let mut types: Vec<usize> = types.into_iter().collect();
        types.sort_unstable();
        types.dedup();
        ResidueRef { types, base }
    }

    /// The `s`-panel containing `x`.
    pub fn panel(s: usize, x: Elem) -> Self {
        ResidueRef { types: vec![s], base: x }
    }
}

/// A gallery stored as start chamber plus word; chambers are recomputed.
#[derive(Clone, Debug)]
pub struct Gallery {
    pub start: Elem,
    pub word: Word,
}

impl Gallery {
    pub fn new(start: Elem, word: Word) -> Self {
        Gallery { start, word }
    }

    pub fn chambers(&self, sys: &CoxSystem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.word.len() + 1);
        let mut c = self.start.clone();
        out.push(c.clone());
        for &s in self.word.letters() {
            c = sys.mul_gen(&c, s);
            out.push(c.clone());
        }
        out
    }

    pub fn end(&self, sys: &CoxSystem) -> Elem {
        sys.mul(&self.start, &sys.elem_from_word(&self.word))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalityMode {
    ByLength,
    ByWalls,
}

/// Outcome of a minimality test. When the walls mode rejects a gallery,
/// `repeated_wall` names a wall crossed at two steps (1-based).
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub repeated_wall: Option<(RootVec, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullMode {
    RootIntersection,
    GalleryClosure,
}

impl CoxSystem {
    pub fn weyl_distance(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x.system_id())?;
        self.check(y.system_id())?;
        Ok(self.dist(x, y))
    }

    pub(crate) fn dist(&self, x: &Elem, y: &Elem) -> Elem {
        self.mul(&self.inv(x), y)
    }

    /// Strips right descents lying in `types` until none is left: the
    /// minimal-length representative of `w·<J>`.
    pub(crate) fn min_coset_rep(&self, w: &Elem, types: &[usize]) -> Elem {
        let mut w = w.clone();
        while let Some(&s) = types.iter().find(|&&s| w.has_right_descent(s)) {
            w = self.mul_gen(&w, s);
        }
        w
    }

    /// Gate of `R` seen from `x`: `x·w^J` for `w = δ(x, base)`.
    pub fn proj(&self, r: &ResidueRef, x: &Elem) -> Result<Elem> {
        self.check(r.base.system_id())?;
        self.check(x.system_id())?;
        let w = self.dist(x, &r.base);
        Ok(self.mul(x, &self.min_coset_rep(&w, &r.types)))
    }

    pub fn residue_contains(&self, r: &ResidueRef, x: &Elem) -> bool {
        self.min_coset_rep(&self.dist(&r.base, x), &r.types).is_identity()
    }

    pub fn same_residue(&self, a: &ResidueRef, b: &ResidueRef) -> bool {
        a.types == b.types && self.residue_contains(a, &b.base)
    }

    /// Chambers of a spherical residue in canonical order of their offset
    /// from the base. Refuses infinite residues and those above `limit`.
    pub fn residue_chambers(&self, r: &ResidueRef, limit: u64) -> Result<Vec<Elem>> {
        self.check(r.base.system_id())?;
        let name = || self.parabolic_type_name(&r.types).unwrap_or_else(|| format!("{:?}", r.types));
        let size = self.parabolic_order(&r.types).ok_or_else(|| Error::InfiniteResidue(name()))?;
        if size > u128::from(limit) {
            return Err(Error::ResidueTooLarge { size: size.min(u128::from(u64::MAX)) as u64, limit });
        }
        let offsets = self.bfs(&r.types, usize::MAX);
        Ok(offsets.iter().map(|v| self.mul(&r.base, v)).collect())
    }

    /// Breadth-first enumeration of `<J>` up to the given length, by right
    /// multiplication in generator order. The discovery order is the
    /// canonical one: by length, then lexicographically smallest word.
    pub(crate) fn bfs(&self, types: &[usize], radius: usize) -> Vec<Elem> {
        let mut seen: HashSet<Elem> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut frontier = 0..1;
        for _ in 0..radius {
            let mut next = Vec::new();
            for i in frontier.clone() {
                for &s in types {
                    if out[i].has_right_descent(s) {
                        continue;
                    }
                    let w = self.mul_gen(&out[i], s);
                    if seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let start = out.len();
            out.extend(next);
            frontier = start..out.len();
        }
        out
    }

    /// All chambers at distance at most `radius` from the identity.
    pub fn ball(&self, radius: usize) -> Vec<Elem> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.bfs(&all, radius)
    }

    /// `w ∈ β` iff `w⁻¹(β)` is positive.
    pub fn root_contains(&self, beta: &RootVec, w: &Elem) -> bool {
        assert_eq!(beta.system_id(), w.system_id(), "root and chamber from different systems");
        self.act(&self.inv(w), beta).is_positive()
    }

    /// Positive roots made negative by `w⁻¹`, listed along the lex-smallest
    /// reduced word `s₁⋯s_k`: `s₁⋯s_{i−1}(α_{s_i})`.
    pub fn inversion_set(&self, w: &Elem) -> Vec<RootVec> {
        let word = self.reduced_word(w);
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &s in word.letters() {
            out.push(self.act(&prefix, &self.simple_root(s)));
            prefix = self.mul_gen(&prefix, s);
        }
        out
    }

    /// Roots containing `x` but not `y`, in the order a minimal gallery from
    /// `x` to `y` crosses their walls.
    pub fn separating_roots(&self, x: &Elem, y: &Elem) -> Result<Vec<RootVec>> {
        self.check(x.system_id())?;
        self.check(y.system_id())?;
        Ok(self.inversion_set(&self.dist(x, y)).iter().map(|b| self.act(x, b)).collect())
    }

    /// The wall crossed when passing from `c` to `c·s`, as its positive root.
    pub fn crossed_wall(&self, c: &Elem, s: usize) -> RootVec {
        self.act(c, &self.simple_root(s)).wall()
    }

    pub fn is_minimal(&self, g: &Gallery, mode: MinimalityMode) -> MinimalityReport {
        match mode {
            MinimalityMode::ByLength => {
                let minimal = self.length(&self.elem_from_word(&g.word)) == g.word.len();
                MinimalityReport { minimal, repeated_wall: None }
            }
            MinimalityMode::ByWalls => {
                let mut first: HashMap<RootVec, usize> = HashMap::new();
                let mut c = g.start.clone();
                for (i, &s) in g.word.letters().iter().enumerate() {
                    let wall = self.crossed_wall(&c, s);
                    if let Some(&j) = first.get(&wall) {
                        return MinimalityReport { minimal: false, repeated_wall: Some((wall, j, i + 1)) };
                    }
                    first.insert(wall, i + 1);
                    c = self.mul_gen(&c, s);
                }
                MinimalityReport { minimal: true, repeated_wall: None }
            }
        }
    }

    /// Chambers lying on some minimal gallery from `x` to `y`.
    pub fn interval(&self, x: &Elem, y: &Elem) -> Vec<Elem> {
        let u = self.dist(y, x);
        // every v with u = v·w reduced is reached by stripping right descents
        let mut seen: HashSet<Elem> = HashSet::from([u.clone()]);
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            for s in self.right_descents(&v) {
                let w = self.mul_gen(&v, s);
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        seen.iter().map(|v| self.mul(y, v)).collect()
    }

    /// Convex hull of a finite chamber set, in canonical order.
    pub fn convex_hull(&self, xs: &[Elem], mode: HullMode) -> Result<Vec<Elem>> {
        let Some(x0) = xs.first() else {
            return Err(Error::EmptyInput);
        };
        for x in xs {
            self.check(x.system_id())?;
        }
        let mut hull = match mode {
            HullMode::GalleryClosure => self.hull_by_galleries(xs),
            HullMode::RootIntersection => self.hull_by_roots(x0, xs),
        };
        self.canonical_sort(&mut hull);
        Ok(hull)
    }

    fn hull_by_galleries(&self, xs: &[Elem]) -> Vec<Elem> {
        let mut members: Vec<Elem> = Vec::new();
        let mut index: HashSet<Elem> = HashSet::new();
        let mut queue: VecDeque<Elem> = xs.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if !index.insert(x.clone()) {
                continue;
            }
            for y in &members {
                for z in self.interval(&x, y) {
                    if !index.contains(&z) {
                        queue.push_back(z);
                    }
                }
            }
            members.push(x);
        }
        members
    }

    /// `w` is in the hull iff no root separating `x0` from `w` contains all
    /// of `X`. The hull is gallery-connected from `x0`, so a search that only
    /// expands members finds all of it.
    fn hull_by_roots(&self, x0: &Elem, xs: &[Elem]) -> Vec<Elem> {
        let inverses: Vec<Elem> = xs.iter().map(|x| self.inv(x)).collect();
        let is_member = |w: &Elem| self.hull_member(x0, &inverses, w);
        let mut seen: HashSet<Elem> = HashSet::from([x0.clone()]);
        let mut members = vec![x0.clone()];
        let mut i = 0;
        while i < members.len() {
            let c = members[i].clone();
            i += 1;
            for s in 0..self.rank() {
                let d = self.mul_gen(&c, s);
                if seen.insert(d.clone()) && is_member(&d) {
                    members.push(d);
                }
            }
        }
        members
    }

    fn hull_member(&self, x0: &Elem, inverses: &[Elem], w: &Elem) -> bool {
        self.inversion_set(&self.dist(x0, w))
            .iter()
            .map(|b| self.act(x0, b))
            .all(|alpha| inverses.iter().any(|xi| !self.act(xi, &alpha).is_positive()))
    }

    /// Whether `w ∈ conv(X)`, without building the hull: no root separating
    /// the first point of `X` from `w` may contain all of `X`.
    pub fn in_convex_hull(&self, xs: &[Elem], w: &Elem) -> Result<bool> {
        let Some(x0) = xs.first() else {
            return Err(Error::EmptyInput);
        };
        self.check(w.system_id())?;
        let inverses = xs.iter().map(|x| self.check(x.system_id()).map(|_| self.inv(x))).collect::<Result<Vec<_>>>()?;
        Ok(self.hull_member(x0, &inverses, w))
    }

    /// Every root (both signs) whose wall contains a panel `{u, us}` of the
    /// ball of the given radius.
    pub fn enumerate_roots_meeting_ball(&self, radius: usize) -> Vec<RootVec> {
        let mut out: Vec<RootVec> = self
            .walls_meeting_ball(radius)
            .into_iter()
            .flat_map(|w| {
                let n = w.neg();
                [w, n]
            })
            .collect();
        out.sort();
        out
    }

    /// Walls meeting the ball, each as its positive root.
    pub fn walls_meeting_ball(&self, radius: usize) -> Vec<RootVec> {
        let ball = self.ball(radius);
        let members: HashSet<&Elem> = ball.iter().collect();
        let mut walls: HashSet<RootVec> = HashSet::new();
        for u in &ball {
            for s in 0..self.rank() {
                if members.contains(&self.mul_gen(u, s)) {
                    walls.insert(self.crossed_wall(u, s));
                }
            }
        }
        let mut out: Vec<RootVec> = walls.into_iter().collect();
        out.sort();
        out
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
    fn weyl_distance_examples() {
        let a2 = build_system("A2").unwrap();
        let x = e(&a2, "s1 s2");
        assert!(a2.weyl_distance(&x, &x).unwrap().is_identity());
        assert_eq!(a2.weyl_distance(&e(&a2, "s1"), &x).unwrap(), e(&a2, "s2"));
        assert_eq!(a2.weyl_distance(&x, &a2.identity()).unwrap(), e(&a2, "s2 s1"));
    }

    #[test]
    fn projection_examples() {
        let a2 = build_system("A2").unwrap();
        let panel = ResidueRef::panel(1, a2.identity());
        assert_eq!(a2.proj(&panel, &e(&a2, "s1 s2")).unwrap(), a2.identity());
        assert_eq!(a2.proj(&panel, &e(&a2, "s2")).unwrap(), e(&a2, "s2"));
    }

    #[test]
    fn residues_are_finite_or_refused() {
        let sys = build_system("A~2").unwrap();
        let gem = ResidueRef::new([1, 2], sys.identity());
        assert_eq!(sys.residue_chambers(&gem, RESIDUE_LIMIT).unwrap().len(), 6);
        let all = ResidueRef::new([0, 1, 2], sys.identity());
        assert!(matches!(sys.residue_chambers(&all, RESIDUE_LIMIT), Err(Error::InfiniteResidue(_))));
        assert!(matches!(sys.residue_chambers(&gem, 5), Err(Error::ResidueTooLarge { size: 6, limit: 5 })));
        let moved = ResidueRef::new([1, 2], e(&sys, "s1 s2"));
        assert!(sys.same_residue(&gem, &moved));
        assert!(!sys.same_residue(&gem, &ResidueRef::new([1, 2], e(&sys, "s0"))));
    }

    #[test]
    fn ball_sizes_and_order() {
        let a1 = build_system("A~1").unwrap();
        assert_eq!(a1.ball(3).len(), 7);
        let a2 = build_system("A2").unwrap();
        assert_eq!(a2.ball(10).len(), 6);
        let sys = build_system("A~2").unwrap();
        let ball = sys.ball(4);
        let keys: Vec<_> = ball.iter().map(|w| sys.canonical_key(w)).collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn roots_meeting_balls() {
        let a2 = build_system("A2").unwrap();
        assert_eq!(a2.enumerate_roots_meeting_ball(3).len(), 6);
        let a1 = build_system("A1").unwrap();
        assert_eq!(a1.enumerate_roots_meeting_ball(1).len(), 2);
        let line = build_system("A~1").unwrap();
        assert_eq!(line.walls_meeting_ball(3).len(), 6);
        assert_eq!(line.enumerate_roots_meeting_ball(3).len(), 12);
    }

    #[test]
    fn root_membership() {
        let sys = build_system("A~2").unwrap();
        let a = sys.simple_root(0);
        assert!(sys.root_contains(&a, &sys.identity()));
        assert!(!sys.root_contains(&a, &sys.generator(0)));
    }

    #[test]
    fn separating_root_examples() {
        let a2 = build_system("A2").unwrap();
        let x = e(&a2, "s2");
        assert!(a2.separating_roots(&x, &x).unwrap().is_empty());
        assert_eq!(a2.separating_roots(&x, &e(&a2, "s2 s1")).unwrap().len(), 1);
        assert_eq!(a2.separating_roots(&a2.identity(), &e(&a2, "s1 s2 s1")).unwrap().len(), 3);
    }

    #[test]
    fn minimality_examples() {
        let sys = build_system("A2").unwrap();
        let one = sys.identity();
        for mode in [MinimalityMode::ByLength, MinimalityMode::ByWalls] {
            assert!(sys.is_minimal(&Gallery::new(one.clone(), Word(vec![0])), mode).minimal);
            assert!(!sys.is_minimal(&Gallery::new(one.clone(), Word(vec![0, 0])), mode).minimal);
            assert!(!sys.is_minimal(&Gallery::new(one.clone(), Word(vec![0, 1, 0, 1])), mode).minimal);
        }
        let r = sys.is_minimal(&Gallery::new(one, Word(vec![0, 0])), MinimalityMode::ByWalls);
        let (wall, i, j) = r.repeated_wall.unwrap();
        assert_eq!((wall, i, j), (sys.simple_root(0), 1, 2));
    }

    #[test]
    fn hull_examples() {
        let a2 = build_system("A2").unwrap();
        for mode in [HullMode::RootIntersection, HullMode::GalleryClosure] {
            let c = e(&a2, "s2");
            assert_eq!(a2.convex_hull(std::slice::from_ref(&c), mode).unwrap(), vec![c]);
            let h = a2.convex_hull(&[a2.identity(), e(&a2, "s1 s2")], mode).unwrap();
            assert_eq!(h, vec![a2.identity(), e(&a2, "s1"), e(&a2, "s1 s2")]);
            assert_eq!(a2.convex_hull(&[], mode), Err(Error::EmptyInput));
        }
    }

    #[test]
    fn residues_are_convex() {
        let sys = build_system("C~2").unwrap();
        let r = ResidueRef::new([0, 1], e(&sys, "s2 s1 s0"));
        let mut chambers = sys.residue_chambers(&r, RESIDUE_LIMIT).unwrap();
        sys.canonical_sort(&mut chambers);
        for mode in [HullMode::RootIntersection, HullMode::GalleryClosure] {
            assert_eq!(sys.convex_hull(&chambers, mode).unwrap(), chambers);
        }
    }
}
