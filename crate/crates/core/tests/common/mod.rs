#![allow(dead_code)]

use std::collections::HashMap;

use flatbldg::{CoxSystem, Elem, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(sys: &CoxSystem, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(0..sys.rank())).collect())
}

pub fn random_elem(sys: &CoxSystem, rng: &mut ChaCha8Rng, max_len: usize) -> Elem {
    sys.elem_from_word(&random_word(sys, rng, max_len))
}

/// Every word of length `len` over the generators.
pub fn all_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word).collect()
}

/// Word-length oracle: breadth-first search of the Cayley graph using only
/// matrix products, independent of the descent machinery.
pub fn cayley_lengths(sys: &CoxSystem, radius: usize) -> HashMap<Elem, usize> {
    let mut dist = HashMap::from([(sys.identity(), 0)]);
    let mut frontier = vec![sys.identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..sys.rank() {
                let x = sys.multiply(w, &sys.generator(s)).unwrap();
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), r);
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    dist
}
