use rand::Rng;

use crate::graph::Solution;

/// Standard bit mutation: positions to flip, each chosen independently with
/// probability `1/n`. Consumes exactly `n` Bernoulli draws.
pub fn sample_flips<R: Rng + ?Sized>(n: usize, rng: &mut R, out: &mut Vec<usize>) {
    out.clear();
    if n == 0 {
        return;
    }
    let p = 1.0 / n as f64;
    for v in 0..n {
        if rng.random_bool(p) {
            out.push(v);
        }
    }
}

/// Offspring of `x` under standard bit mutation. The offspring may equal
/// the parent.
pub fn mutate<R: Rng + ?Sized>(x: &Solution, rng: &mut R) -> Solution {
    let mut flips = Vec::new();
    sample_flips(x.len(), rng, &mut flips);
    let mut y = x.clone();
    for v in flips {
        y.flip(v);
    }
    y
}

/// Uniform sample from `{0,1}^n`.
pub fn uniform_solution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Solution {
    Solution::from_bits((0..n).map(|_| rng.random_bool(0.5)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn single_bit_always_flips() {
        let mut rng = rng_from_seed(1);
        let x = Solution::zeros(1);
        for _ in 0..100 {
            assert_eq!(mutate(&x, &mut rng), Solution::ones(1));
        }
    }

    #[test]
    fn flips_match_mutate() {
        let x: Solution = "0110100101".parse().unwrap();
        let mut a = rng_from_seed(7);
        let mut b = rng_from_seed(7);
        let mut flips = Vec::new();
        for _ in 0..50 {
            sample_flips(x.len(), &mut a, &mut flips);
            let y = mutate(&x, &mut b);
            assert_eq!(y.hamming_distance(&x), flips.len());
            assert!(flips.iter().all(|&v| y.get(v) != x.get(v)));
        }
    }
}
