use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stoyanov_core::padic::{
    dense, essential, essential_closure, essential_in_component, essential_oracle, free_rank, PadicAmbient,
    PadicSubgroup, DEFAULT_SAMPLE_BOUND,
};

fn subgroup() -> impl Strategy<Value = PadicSubgroup> {
    let ambient = prop::sample::subsequence(vec![2u64, 3, 5], 1..=2)
        .prop_flat_map(|ps| prop::collection::vec(1usize..=3, ps.len()).prop_map(move |ns| ps.iter().copied().zip(ns).collect::<Vec<_>>()));
    ambient.prop_flat_map(|comps| {
        let width: usize = comps.iter().map(|c| c.1).sum();
        prop::collection::vec(prop::collection::vec(-9i64..=9, width), 0..=3).prop_map(move |gens| {
            PadicSubgroup::from_integers(PadicAmbient::new(comps.clone()).unwrap(), gens).unwrap()
        })
    })
}

/// Full rank of each block projection, decided in floating point by asking
/// whether every standard basis vector of the block is in the real span.
fn product_space_essential(h: &PadicSubgroup) -> bool {
    let amb = h.ambient();
    amb.components().iter().all(|&(p, n)| {
        let block = amb.block(p).unwrap();
        (0..n).all(|j| {
            let gens: Vec<Vec<f64>> = h
                .generators()
                .iter()
                .map(|g| block.clone().map(|c| g[c].to_integer().try_into().map(|x: i64| x as f64).unwrap()).collect())
                .collect();
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            in_real_span(&gens, &e)
        })
    })
}

/// Least-squares residual test; entries are tiny integers so a tolerance is safe here.
fn in_real_span(gens: &[Vec<f64>], target: &[f64]) -> bool {
    // Gram-Schmidt
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for g in gens {
        let mut v = g.clone();
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
    }
    let mut r = target.to_vec();
    for b in &basis {
        let d: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
        r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
    }
    r.iter().map(|x| x * x).sum::<f64>() < 1e-12
}

proptest! {
    #[test]
    fn componentwise_decomposition(h in subgroup()) {
        let by_parts = h.ambient().primes().all(|p| essential_in_component(&h, p).unwrap());
        prop_assert_eq!(essential(&h), by_parts);
        prop_assert_eq!(essential(&h), product_space_essential(&h));
    }

    #[test]
    fn oracle_never_contradicts_the_criterion(h in subgroup(), seed in any::<u64>()) {
        let oracle = essential_oracle(&h, 200, seed, DEFAULT_SAMPLE_BOUND);
        if essential(&h) {
            prop_assert!(oracle);
        }
    }

    #[test]
    fn enlarging_never_breaks_density_or_essentiality(h in subgroup(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let width = h.ambient().total_rank();
        let extra: Vec<i64> = (0..width).map(|_| rng.gen_range(-9..=9)).collect();
        let mut gens: Vec<Vec<i64>> = h
            .generators()
            .iter()
            .map(|g| g.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
            .collect();
        gens.push(extra);
        let bigger = PadicSubgroup::from_integers(h.ambient().clone(), gens).unwrap();
        prop_assert!(!dense(&h) || dense(&bigger));
        prop_assert!(!essential(&h) || essential(&bigger));
    }

    #[test]
    fn closures_are_essential_free_extensions(h in subgroup()) {
        match essential_closure(&h) {
            Ok(c) => {
                prop_assert!(essential(&c));
                prop_assert_eq!(&c.generators()[..h.generators().len()], h.generators());
                prop_assert_eq!(free_rank(&c), c.generators().len());
                let deficiency: usize = h.ambient().components().iter().map(|&(p, n)| {
                    let block: Vec<usize> = h.ambient().block(p).unwrap().collect();
                    let proj: Vec<Vec<i64>> = h.generators().iter().map(|g| block.iter().map(|&i| g[i].to_integer().try_into().unwrap()).collect()).collect();
                    n - integer_rank(proj)
                }).sum();
                prop_assert_eq!(c.generators().len(), h.generators().len() + deficiency);
            }
            Err(_) => prop_assert!(free_rank(&h) < h.generators().len()),
        }
    }
}

/// Rank of a small integer matrix by fraction-free elimination in i128.
fn integer_rank(mut m: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<i128>> = m.drain(..).map(|r| r.into_iter().map(i128::from).collect()).collect();
    let width = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in &mut m[rank + 1..] {
            let (a, b) = (pivot_row[col], row[col]);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = *x * a - y * b;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}
