use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teachdim::teaching::{
    btd, btd_batch, btd_tabular, default_pool_max_len, learn, parse_tabular_class, posterior,
    td_tabular, ExampleSet, LabeledExample, LearnOutcome, TabularClass, TabularExample,
    DEFAULT_SIZE_CAP,
};
use teachdim::{BinaryString, Catalog};

fn chi_square(counts: &HashMap<usize, usize>, cells: usize, draws: usize) -> f64 {
    let expected = draws as f64 / cells as f64;
    (0..cells)
        .map(|i| {
            let o = *counts.get(&i).unwrap_or(&0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum()
}

#[test]
fn sampling_is_uniform_within_a_batch() {
    let catalog = Catalog::new(2);
    let rejection = Catalog::new(1);
    let batch = catalog.batch(2).unwrap();
    for cat in [&catalog, &rejection] {
        let mut counts = HashMap::new();
        for seed in 0..10_000 {
            let d = cat.random_concept(2, seed).unwrap();
            *counts.entry(batch.position(&d).unwrap()).or_insert(0) += 1;
        }
        // 23 degrees of freedom; 49.7 is the 0.1% critical value
        let stat = chi_square(&counts, 24, 10_000);
        assert!(stat < 49.7, "chi-square {stat}");
    }
}

#[test]
fn witnesses_round_trip_through_the_learner() {
    let catalog = Catalog::new(3);
    for k in 1..=2 {
        for (c, r) in catalog
            .batch(k)
            .unwrap()
            .concepts()
            .iter()
            .zip(btd_batch(&catalog, k, None, DEFAULT_SIZE_CAP).unwrap())
        {
            assert_eq!(
                learn(&catalog, &r.witness, k).unwrap(),
                LearnOutcome::Identified(c.clone())
            );
        }
    }
    // Some three-state concepts need eight examples.
    for seed in 0..100 {
        let c = catalog.random_concept(3, seed).unwrap();
        let r = btd(&catalog, &c, default_pool_max_len(3), 10).unwrap();
        assert!(r.exact);
        assert_eq!(
            learn(&catalog, &r.witness, 3).unwrap().identified(),
            Some(&c)
        );
    }
}

#[test]
fn witnesses_are_stable_under_consistent_supersets() {
    let catalog = Catalog::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=3);
        let c = catalog.random_concept(k, rng.gen()).unwrap();
        let r = btd(&catalog, &c, default_pool_max_len(k), DEFAULT_SIZE_CAP).unwrap();
        let mut s = r.witness.clone();
        for _ in 0..rng.gen_range(1..=6) {
            let w = BinaryString::from_shortlex_index(rng.gen_range(0..255));
            let label = c.run(&w);
            s.insert(LabeledExample { instance: w, label }).unwrap();
        }
        assert!(r.witness.is_subset(&s));
        assert_eq!(learn(&catalog, &s, k).unwrap().identified(), Some(&c));
    }
}

#[test]
fn longer_pools_never_need_more_examples() {
    let catalog = Catalog::new(2);
    for c in catalog.batch(2).unwrap().concepts() {
        let dims: Vec<usize> = (2..=5)
            .map(|len| btd(&catalog, c, len, DEFAULT_SIZE_CAP).unwrap().dimension)
            .collect();
        assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{dims:?}");
    }
}

#[test]
fn witness_is_minimal_by_exhaustion_for_two_states() {
    // Oracle: try every labelled subset of the 7-word pool.
    let catalog = Catalog::new(2);
    let rivals: Vec<_> = (1..=2)
        .flat_map(|k| catalog.batch(k).unwrap().concepts().to_vec())
        .collect();
    let pool: Vec<BinaryString> = BinaryString::all_up_to(2).collect();
    for c in catalog.batch(2).unwrap().concepts() {
        let best = (0u32..1 << pool.len())
            .filter(|mask| {
                rivals.iter().all(|r| {
                    r == c
                        || (0..pool.len())
                            .any(|i| mask >> i & 1 == 1 && r.run(&pool[i]) != c.run(&pool[i]))
                })
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize;
        assert_eq!(
            btd(&catalog, c, 2, DEFAULT_SIZE_CAP).unwrap().dimension,
            best
        );
    }
}

const SEVEN_INSTANCES: &str = "\
instances x1 x2 x3 x4 x5 x6 x7
concept c1 0010110 0.30
concept c2 0101110 0.25
concept c3 1001110 0.20
concept c4 0000110 0.05
concept c5 0000010 0.01
concept c6 0001101 0.01
rest 0.18 1/2 1/3 2/3
";

fn q(n: i64, d: i64) -> num::BigRational {
    num::BigRational::new(n.into(), d.into())
}

/// Smallest labelled set after which `target` is the unique heaviest
/// consistent listed concept (`biased`), or the only one (`!biased`).
fn brute_tabular(class: &TabularClass, target: usize, biased: bool) -> Option<usize> {
    let n = class.instances.len();
    let row = &class.concepts[target].row;
    (0u32..1 << n)
        .filter(|mask| {
            class.concepts.iter().enumerate().all(|(j, c)| {
                let consistent = (0..n).all(|i| mask >> i & 1 == 0 || c.row[i] == row[i]);
                j == target || !consistent || (biased && c.mass < class.concepts[target].mass)
            })
        })
        .map(|m| m.count_ones() as usize)
        .min()
}

#[test]
fn tabular_posteriors_are_exact() {
    let class = parse_tabular_class(SEVEN_INSTANCES).unwrap();
    let seq = [("x4", false), ("x3", false), ("x5", true)];
    let mut examples = Vec::new();
    let want_m = [q(45, 100), q(9, 100), q(7, 100)];
    let want_c4 = [q(1, 9), q(5, 9), q(5, 7)];
    for (i, (x, l)) in seq.iter().enumerate() {
        examples.push(TabularExample {
            instance: x.to_string(),
            label: *l,
        });
        let p = posterior(&class, &examples).unwrap();
        assert_eq!(p.normalizer, want_m[i]);
        assert_eq!(p.posteriors[3], want_c4[i]);
    }
}

#[test]
fn tabular_dimensions_match_exhaustive_search() {
    let class = parse_tabular_class(SEVEN_INSTANCES).unwrap();
    let mut btds = Vec::new();
    for (j, c) in class.concepts.iter().enumerate() {
        let b = btd_tabular(&class, &c.name).unwrap();
        assert_eq!(Some(b), brute_tabular(&class, j, true));
        assert_eq!(
            td_tabular(&class, &c.name).ok(),
            brute_tabular(&class, j, false)
        );
        btds.push(b);
    }
    assert_eq!(btds, [0, 1, 1, 2, 1, 1]);
}

#[test]
fn example_sets_reject_contradictions() {
    let mut s = ExampleSet::new();
    s.insert(LabeledExample::positive("01")).unwrap();
    assert!(s.insert(LabeledExample::negative("01")).is_err());
}
