use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rational_to_string, Assignment};

/// Seeded source of generic rational sample points. Values in {0, 1, -1}
/// are never produced; callers reject further points through `accept`.
pub struct PointSampler {
    rng: ChaCha8Rng,
    rejected: Vec<String>,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), rejected: Vec::new() }
    }

    fn value(&mut self) -> BigRational {
        loop {
            let num: i64 = self.rng.gen_range(-9..=9);
            let den: i64 = self.rng.gen_range(1..=5);
            let v = BigRational::new(num.into(), den.into());
            if v.is_zero() || v.abs().is_one() {
                continue;
            }
            return v;
        }
    }

    /// Draws `count` points over `names`, each passing `accept`.
    pub fn points(&mut self, names: &[&str], count: usize, accept: impl Fn(&Assignment) -> bool) -> Vec<Assignment> {
        let mut out = Vec::with_capacity(count);
        let mut tries = 0;
        while out.len() < count {
            tries += 1;
            assert!(tries < 10_000, "could not find generic sample points");
            let mut a = Assignment::new();
            for n in names {
                let v = self.value();
                a.insert(n.to_string(), v);
            }
            if out.contains(&a) {
                continue;
            }
            if accept(&a) {
                out.push(a);
            } else {
                self.rejected.push(format_point(&a));
            }
        }
        out
    }

    pub fn rejected(&self) -> &[String] {
        &self.rejected
    }
}

pub fn format_point(a: &Assignment) -> String {
    a.iter().map(|(k, v)| format!("{k}={}", rational_to_string(v))).collect::<Vec<_>>().join(",")
}
