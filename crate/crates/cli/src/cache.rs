//! On-disk cache of ball enumerations, keyed by a hash of the system and radius.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use flatbldg::{CoxSystem, Elem};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "FLATBLDG_CACHE_DIR";

pub struct BallCache {
    dir: Option<PathBuf>,
}

impl BallCache {
    /// A disabled cache computes every ball afresh.
    pub fn new(enabled: bool) -> Self {
        let dir = enabled.then(|| {
            std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("flatbldg-cache"))
        });
        BallCache { dir }
    }

    fn key(sys: &CoxSystem, radius: usize) -> String {
        let mut h = Sha256::new();
        h.update(format!("ball\n{}\n{:?}\n{radius}", sys.name(), sys.coxeter_matrix()));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn ball(&self, sys: &CoxSystem, radius: usize) -> Vec<Elem> {
        let Some(dir) = &self.dir else {
            return sys.ball(radius);
        };
        let path = dir.join(format!("{}.json", Self::key(sys, radius)));
        if let Some(ball) = fs::read(&path).ok().and_then(|b| Self::decode(sys, &b)) {
            return ball;
        }
        let ball = sys.ball(radius);
        // A failed write only costs a recomputation next time.
        let _ = Self::store(dir, &path, sys, &ball);
        ball
    }

    fn decode(sys: &CoxSystem, bytes: &[u8]) -> Option<Vec<Elem>> {
        let words: Vec<String> = serde_json::from_slice(bytes).ok()?;
        words.iter().map(|w| sys.parse_elem(w).ok()).collect()
    }

    fn store(dir: &PathBuf, path: &PathBuf, sys: &CoxSystem, ball: &[Elem]) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let words: Vec<String> = ball.iter().map(|w| sys.format_elem(w)).collect();
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&serde_json::to_vec(&words)?)?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}
