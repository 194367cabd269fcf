#![allow(dead_code)]

use pfg::{Pangenome, Sequence, TriggerSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub const DNA: &[u8] = b"ACGT";

pub fn running_example() -> (Pangenome, TriggerSet) {
    (
        Pangenome::from_strs(&["CACGTACT", "CACACT", "CACGACT"]).unwrap(),
        TriggerSet::new(["AC", "CG"]).unwrap(),
    )
}

pub fn random_dna<R: Rng>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| *DNA.choose(rng).unwrap()).collect()
}

/// Copy of `seed` with every base substituted with probability `rate`.
pub fn mutate<R: Rng>(rng: &mut R, seed: &[u8], rate: f64) -> Vec<u8> {
    seed.iter()
        .map(|&b| {
            if rng.gen_bool(rate) {
                **DNA
                    .iter()
                    .filter(|&&c| c != b)
                    .collect::<Vec<_>>()
                    .choose(rng)
                    .unwrap()
            } else {
                b
            }
        })
        .collect()
}

pub fn random_triggers<R: Rng>(rng: &mut R) -> TriggerSet {
    let k = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=4);
    TriggerSet::new((0..count).map(|_| random_dna(rng, k))).unwrap()
}

/// 1 to 8 sequences of 10 to 2,000 bases. Odd instances are independent
/// random sequences, even ones are mutated copies of a common seed.
pub fn random_instance<R: Rng>(rng: &mut R, i: usize) -> (Pangenome, TriggerSet) {
    let count = rng.gen_range(1..=8);
    let seqs: Vec<Vec<u8>> = if i % 2 == 1 {
        (0..count)
            .map(|_| {
                let len = rng.gen_range(10..=2000);
                random_dna(rng, len)
            })
            .collect()
    } else {
        let len = rng.gen_range(10..=2000);
        let seed = random_dna(rng, len);
        let rate = [0.0, 0.001, 0.01, 0.05][rng.gen_range(0..4)];
        (0..count).map(|_| mutate(rng, &seed, rate)).collect()
    };
    let pangenome = Pangenome::new(
        seqs.into_iter()
            .enumerate()
            .map(|(j, data)| Sequence {
                name: format!("s{j}"),
                data,
            })
            .collect(),
    )
    .unwrap();
    (pangenome, random_triggers(rng))
}
