//! Index calculus for the flat group of translations of a regular locally
//! finite affine building, driven only by the thickness parameters `q_s`.
//!
//! No building is materialized. Stabilizer indices are `q`-products along
//! minimal galleries, and the roots of the flat group are read off from the
//! parallel classes of the roots cutting a gem.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::affine::{Gem, SectorRef, TranslationElem};
use crate::chamber::{Gallery, MinimalityMode};
use crate::coxeter::{CoxSystem, DiagramAutomorphism, Elem, RootVec, M_INF};
use crate::error::{Error, Result};

/// Panel sizes minus one, per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thickness {
    q: Vec<u64>,
}

impl Thickness {
    pub fn new(sys: &CoxSystem, q: Vec<u64>) -> Result<Self> {
        if q.len() != sys.rank() {
            return Err(Error::InvalidThickness(format!("expected {} values, got {}", sys.rank(), q.len())));
        }
        if let Some(s) = q.iter().position(|&x| x < 2) {
            return Err(Error::InvalidThickness(format!("q({}) = {} is below 2", sys.label(s), q[s])));
        }
        for s in 0..q.len() {
            for t in s + 1..q.len() {
                let m = sys.m(s, t);
                if m != M_INF && m % 2 == 1 && q[s] != q[t] {
                    return Err(Error::InvalidThickness(format!(
                        "q({}) = {} and q({}) = {} differ across the odd edge m = {m}",
                        sys.label(s),
                        q[s],
                        sys.label(t),
                        q[t]
                    )));
                }
            }
        }
        Ok(Thickness { q })
    }

    pub fn uniform(sys: &CoxSystem, q: u64) -> Result<Self> {
        Self::new(sys, vec![q; sys.rank()])
    }

    /// Accepts `3` (uniform), `2,3,2` (generator order) or `s0=2,s1=3,...`.
    pub fn parse(sys: &CoxSystem, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidThickness(format!("{msg} in `{text}`"));
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.is_empty() {
            return Err(bad("empty thickness"));
        }
        let num = |p: &str| p.parse::<u64>().map_err(|_| bad("expected a positive integer"));
        if parts.iter().all(|p| p.contains('=')) {
            let mut q = vec![None; sys.rank()];
            for p in parts {
                let (l, v) = p.split_once('=').expect("checked above");
                let s = sys.generator_index(l.trim())?;
                q[s] = Some(num(v.trim())?);
            }
            let q: Option<Vec<u64>> = q.into_iter().collect();
            return Self::new(sys, q.ok_or_else(|| bad("every generator needs a value"))?);
        }
        let vals = parts.into_iter().map(num).collect::<Result<Vec<_>>>()?;
        match vals.as_slice() {
            [v] => Self::uniform(sys, *v),
            _ => Self::new(sys, vals),
        }
    }

    pub fn get(&self, s: usize) -> u64 {
        self.q[s]
    }

    pub fn values(&self) -> &[u64] {
        &self.q
    }
}

/// A chamber map `x ↦ w·σ(x)`; `σ` is the identity when absent.
#[derive(Clone, Debug)]
pub struct ChamberMap {
    pub elem: Elem,
    pub twist: Option<DiagramAutomorphism>,
}

impl From<Elem> for ChamberMap {
    fn from(elem: Elem) -> Self {
        ChamberMap { elem, twist: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tidy,
    NotTidy,
    NoClaim,
}

/// Index sequence `[U : U ∩ gⁿUg⁻ⁿ]` for `n = 1..N` against `index(1)ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TidinessReport {
    #[serde(with = "big_seq")]
    pub indices: Vec<BigUint>,
    pub geometric: Vec<bool>,
    pub translation: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EigenfactorLabel {
    FixApartment,
    FixRoot(RootVec),
}

/// A root `ρ_γ` of the flat group together with its data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatRoot {
    pub gamma: RootVec,
    /// `γ′ = conv(γ ∪ {c})`.
    pub pushed: RootVec,
    /// Gcd of the parallel shifts of `γ′` under the lattice basis.
    pub m: i64,
    /// Product of wall thicknesses over one period of `m` walls.
    pub scale_base: BigUint,
    /// `ρ_γ` on the lattice basis.
    pub values: Vec<i64>,
}

impl FlatRoot {
    /// `ρ_γ(t) = −parallel_dist(γ′, t(γ′)) / m`: positive when `t` shrinks `γ′`.
    pub fn rho(&self, t: &TranslationElem) -> i64 {
        t.lattice.iter().zip(&self.values).map(|(a, b)| a * b).sum()
    }
}

/// One `{γ, −γ}` pair of the scale factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleFactor {
    pub gamma: RootVec,
    pub scale_base: BigUint,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleReport {
    pub scale: BigUint,
    pub factors: Vec<ScaleFactor>,
}

/// Outcome of the sweep over all sign vectors.
#[derive(Clone, Debug)]
pub struct EigenfactorCensus {
    pub sweep: Vec<(Vec<i8>, EigenfactorLabel)>,
    /// Distinct labels produced by the sweep, sorted.
    pub sweep_labels: Vec<EigenfactorLabel>,
    /// `FixApartment` together with the sweep labels, sorted.
    pub labels: Vec<EigenfactorLabel>,
    /// For every `γ ∈ Φ_R`, whether `ε_i = +1 ⇔ c_i ∈ γ` yields `FixRoot(γ′)`.
    pub every_root_realized: bool,
}

/// Wall count of one parallel-class pair between `c` and `t(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingCount {
    pub gamma: RootVec,
    pub crossed: u64,
    pub expected: u64,
}

impl CoxSystem {
    /// `∏ q_{s_i}` over a reduced word of `w`.
    pub fn q_length(&self, w: &Elem, q: &Thickness) -> BigUint {
        self.reduced_word(w).letters().iter().map(|&s| BigUint::from(q.get(s))).product()
    }

    /// Thickness of the panels of `∂β`.
    pub fn wall_thickness(&self, beta: &RootVec, q: &Thickness) -> u64 {
        q.get(self.wall_type(beta))
    }

    fn apply_map(&self, g: &ChamberMap, x: &Elem) -> Result<Elem> {
        let y = match &g.twist {
            Some(sigma) => sigma.apply(self, x)?,
            None => x.clone(),
        };
        Ok(self.mul(&g.elem, &y))
    }

    fn check_twist(&self, g: &ChamberMap, q: &Thickness) -> Result<()> {
        if let Some(sigma) = &g.twist {
            for (s, &t) in sigma.permutation().iter().enumerate() {
                if q.get(s) != q.get(t) {
                    return Err(Error::ThicknessSigmaMismatch {
                        s: self.label(s).to_string(),
                        t: self.label(t).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `q_length(δ(c, gⁿ(c)))`.
    pub fn stabilizer_index(&self, c: &Elem, g: &ChamberMap, n: usize, q: &Thickness) -> Result<BigUint> {
        self.check(c.system_id())?;
        self.check(g.elem.system_id())?;
        self.check_twist(g, q)?;
        let mut x = c.clone();
        for _ in 0..n {
            x = self.apply_map(g, &x)?;
        }
        Ok(self.q_length(&self.dist(c, &x), q))
    }

    /// Compares `index(n)` with `index(1)ⁿ` for `n = 1..=big_n`. A verdict is
    /// only issued for translations.
    pub fn tidiness_check(&self, c: &Elem, g: &ChamberMap, big_n: usize, q: &Thickness) -> Result<TidinessReport> {
        self.check_twist(g, q)?;
        let indices: Vec<BigUint> =
            (1..=big_n).map(|n| self.stabilizer_index(c, g, n, q)).collect::<Result<_>>()?;
        let geometric: Vec<bool> = indices
            .iter()
            .enumerate()
            .map(|(i, x)| indices.first().is_some_and(|first| *x == first.pow(i as u32 + 1)))
            .collect();
        let translation = g.twist.as_ref().is_none_or(|s| s.permutation().iter().enumerate().all(|(i, &p)| i == p))
            && self.affine_data().is_some()
            && self.translation_test(&g.elem)?.is_some();
        let verdict = match (translation, geometric.iter().all(|&b| b)) {
            (false, _) => Verdict::NoClaim,
            (true, true) => Verdict::Tidy,
            (true, false) => Verdict::NotTidy,
        };
        Ok(TidinessReport { indices, geometric, translation, verdict })
    }

    /// Minimal gallery from the apex to its opposite chamber along the
    /// lex-smallest reduced word of the longest element of the gem type.
    pub fn gallery_to_opposite(&self, sigma: &SectorRef) -> Result<Gallery> {
        let d = self.opposite_in_gem(sigma.gem(), sigma.apex())?;
        let word = self.reduced_word(&self.dist(sigma.apex(), &d));
        Ok(Gallery::new(sigma.apex().clone(), word))
    }

    /// Chooses `d_i = c_i` or its opposite `e_i` in the gem by the sign of
    /// `ε_i`, then names the fixator of `conv` of the resulting set.
    pub fn eigenfactor_label(&self, sigma: &SectorRef, gallery: &Gallery, eps: &[i8]) -> Result<EigenfactorLabel> {
        let gem = sigma.gem();
        if gallery.start != *sigma.apex() {
            return Err(Error::NotOpposite);
        }
        if !self.is_minimal(gallery, MinimalityMode::ByLength).minimal {
            return Err(Error::GalleryNotMinimal);
        }
        if gallery.end(self) != self.opposite_in_gem(gem, sigma.apex())? {
            return Err(Error::NotOpposite);
        }
        let k = gallery.word.len();
        if eps.len() != k {
            return Err(Error::SignVectorLength { expected: k, got: eps.len() });
        }
        let chambers = gallery.chambers(self);
        let set: Vec<Elem> = chambers[1..]
            .iter()
            .zip(eps)
            .map(|(ci, &e)| if e > 0 { Ok(ci.clone()) } else { self.opposite_in_gem(gem, ci) })
            .collect::<Result<_>>()?;
        for gamma in self.roots_cutting_gem(gem) {
            if set.iter().all(|d| self.root_contains(&gamma, d)) {
                return Ok(EigenfactorLabel::FixRoot(self.pushed_root(&gamma, sigma.apex())?));
            }
        }
        Ok(EigenfactorLabel::FixApartment)
    }

    pub fn eigenfactor_census(&self, sigma: &SectorRef) -> Result<EigenfactorCensus> {
        let gallery = self.gallery_to_opposite(sigma)?;
        let k = gallery.word.len();
        let mut sweep = Vec::with_capacity(1 << k);
        for bits in 0..(1u32 << k) {
            let eps: Vec<i8> = (0..k).map(|i| if bits >> (k - 1 - i) & 1 == 0 { 1 } else { -1 }).collect();
            let label = self.eigenfactor_label(sigma, &gallery, &eps)?;
            sweep.push((eps, label));
        }
        let mut sweep_labels: Vec<EigenfactorLabel> = sweep.iter().map(|(_, l)| l.clone()).collect();
        sweep_labels.sort();
        sweep_labels.dedup();
        let mut labels = sweep_labels.clone();
        labels.push(EigenfactorLabel::FixApartment);
        labels.sort();
        labels.dedup();

        let chambers = gallery.chambers(self);
        let mut every_root_realized = true;
        for gamma in self.roots_cutting_gem(sigma.gem()) {
            let eps: Vec<i8> = chambers[1..].iter().map(|ci| if self.root_contains(&gamma, ci) { 1 } else { -1 }).collect();
            let want = EigenfactorLabel::FixRoot(self.pushed_root(&gamma, sigma.apex())?);
            every_root_realized &= self.eigenfactor_label(sigma, &gallery, &eps)? == want;
        }
        Ok(EigenfactorCensus { sweep, sweep_labels, labels, every_root_realized })
    }

    /// One [`FlatRoot`] per `γ ∈ Φ_R`, in canonical root order.
    pub fn flat_root_system(&self, gem: &Gem, c: &Elem, q: &Thickness) -> Result<Vec<FlatRoot>> {
        if !gem.contains(c) {
            return Err(Error::NotInGem);
        }
        self.roots_cutting_gem(gem).into_iter().map(|g| self.flat_root(&g, c, q)).collect()
    }

    fn flat_root(&self, gamma: &RootVec, c: &Elem, q: &Thickness) -> Result<FlatRoot> {
        let pushed = self.pushed_root(gamma, c)?;
        let p = self.lattice_pairing(&pushed)?;
        let m = crate::linalg::gcd_all(p.iter().copied());
        let mut scale_base = BigUint::one();
        for j in 0..m {
            scale_base *= self.wall_thickness(&self.shift_root(&pushed, -j)?, q);
        }
        Ok(FlatRoot { gamma: gamma.clone(), pushed, m, scale_base, values: p.iter().map(|x| x / m).collect() })
    }

    /// `q_length(δ(c, t(c)))` and its splitting over `{γ, −γ}` pairs. Fails
    /// with `FactorizationMismatch` when the product disagrees.
    pub fn scale_with_factorization(&self, t: &TranslationElem, gem: &Gem, c: &Elem, q: &Thickness) -> Result<ScaleReport> {
        let scale = self.q_length(&self.dist(c, &self.mul(&t.elem, c)), q);
        let roots = self.flat_root_system(gem, c, q)?;
        let mut factors = Vec::new();
        let mut product = BigUint::one();
        for fr in roots.iter().filter(|fr| Self::pair_leader(fr, &roots)) {
            let exponent = fr.rho(t).unsigned_abs();
            product *= fr.scale_base.pow(exponent as u32);
            factors.push(ScaleFactor { gamma: fr.gamma.clone(), scale_base: fr.scale_base.clone(), exponent });
        }
        if product != scale {
            return Err(Error::FactorizationMismatch {
                word: self.format_elem(&t.elem),
                scale: scale.to_string(),
                product: product.to_string(),
            });
        }
        Ok(ScaleReport { scale, factors })
    }

    /// The positive root of each `{γ, −γ}` pair leads it.
    fn pair_leader(fr: &FlatRoot, all: &[FlatRoot]) -> bool {
        debug_assert!(all.iter().any(|o| o.gamma == fr.gamma.neg()));
        fr.gamma.is_positive()
    }

    /// Groups the walls separating `c` from `t(c)` by parallel class and
    /// compares each count with `m_γ·|ρ_γ(t)|`.
    pub fn wall_crossing_census(&self, t: &TranslationElem, gem: &Gem, c: &Elem, q: &Thickness) -> Result<Vec<CrossingCount>> {
        let roots = self.flat_root_system(gem, c, q)?;
        let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for r in self.separating_roots(c, &self.mul(&t.elem, c))? {
            *counts.entry(self.wall_direction(&r)?).or_default() += 1;
        }
        let mut out = Vec::new();
        for fr in roots.iter().filter(|fr| Self::pair_leader(fr, &roots)) {
            let crossed = counts.get(&self.wall_direction(&fr.gamma)?).copied().unwrap_or(0);
            out.push(CrossingCount { gamma: fr.gamma.clone(), crossed, expected: fr.m as u64 * fr.rho(t).unsigned_abs() });
        }
        Ok(out)
    }

    /// Finite direction of `∂β` up to sign: equal exactly for parallel walls.
    fn wall_direction(&self, beta: &RootVec) -> Result<Vec<i64>> {
        let f = self.finite_part(beta)?;
        let sign = f.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
        Ok(f.iter().map(|x| x * sign).collect())
    }

    /// A translation with `ρ_a(t) < 0 < ρ_b(t)`, searched over lattice
    /// coordinates in `[−bound, bound]`.
    pub fn separating_translation(&self, a: &FlatRoot, b: &FlatRoot, bound: i64) -> Result<Option<TranslationElem>> {
        Ok(self.enumerate_translations(bound)?.into_iter().find(|t| a.rho(t) < 0 && b.rho(t) > 0))
    }
}

mod big_seq {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
