use alloc::format;
use alloc::string::String;

use super::Pomonoid;

/// A continuous-enough t-norm on the real unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNorm {
    /// `a * b`
    Product,
    /// `min(a, b)`, the only idempotent t-norm.
    Minimum,
    /// `max(0, a + b - 1)`
    Lukasiewicz,
}

impl TNorm {
    pub fn name(self) -> &'static str {
        match self {
            TNorm::Product => "product",
            TNorm::Minimum => "min",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "product" => Some(TNorm::Product),
            "min" | "minimum" => Some(TNorm::Minimum),
            "lukasiewicz" => Some(TNorm::Lukasiewicz),
            _ => None,
        }
    }

    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Product => a * b,
            TNorm::Minimum => a.min(b),
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }
}

/// `[0, 1]` with its natural order and a t-norm as multiplication.
///
/// Comparisons are exact machine comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitInterval {
    pub tnorm: TNorm,
}

impl UnitInterval {
    pub fn new(tnorm: TNorm) -> Self {
        UnitInterval { tnorm }
    }

    pub fn product() -> Self {
        Self::new(TNorm::Product)
    }
}

impl Pomonoid for UnitInterval {
    type Elem = f64;

    fn unit(&self) -> f64 {
        1.0
    }

    fn times(&self, a: f64, b: f64) -> f64 {
        self.tnorm.apply(a, b)
    }

    fn leq(&self, a: f64, b: f64) -> bool {
        a <= b
    }

    fn contains(&self, a: f64) -> bool {
        (0.0..=1.0).contains(&a)
    }

    fn degree_from_real(&self, x: f64) -> Option<f64> {
        self.contains(x).then_some(x)
    }

    fn format_elem(&self, a: f64) -> String {
        format!("{a:.4}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn product_square() {
        let l = UnitInterval::product();
        assert!((l.power(0.6, 2) - 0.36).abs() < 1e-15);
        assert_eq!(l.power(0.6, 0), 1.0);
    }

    #[test]
    fn carrier_membership() {
        let l = UnitInterval::product();
        assert!(l.contains(0.0) && l.contains(1.0));
        assert!(!l.contains(1.5) && !l.contains(-0.1) && !l.contains(f64::NAN));
        assert_eq!(l.degree_from_real(0.25), Some(0.25));
        assert_eq!(l.degree_from_real(2.0), None);
    }

    #[test]
    fn tnorm_laws_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for tnorm in [TNorm::Product, TNorm::Minimum, TNorm::Lukasiewicz] {
            let l = UnitInterval::new(tnorm);
            for _ in 0..10_000 {
                let (a, b, c): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
                let t = |x, y| l.times(x, y);
                assert!((t(a, b) - t(b, a)).abs() <= 1e-12);
                assert!((t(t(a, b), c) - t(a, t(b, c))).abs() <= 1e-12);
                assert!((t(a, 1.0) - a).abs() <= 1e-12);
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                assert!(t(lo, c) <= t(hi, c) + 1e-12);
                assert!(l.contains(t(a, b)));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for t in [TNorm::Product, TNorm::Minimum, TNorm::Lukasiewicz] {
            assert_eq!(TNorm::from_name(t.name()), Some(t));
        }
        assert_eq!(TNorm::from_name("godel"), None);
    }
}
