//! Deterministic random instances (ring + modules) for the fuzz scenarios.
//! Every instance is derived from (seed, index) alone and carries its own
//! text-format serialization, so any reported counterexample can be replayed
//! by feeding that text back to the parser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsam_core::field::FieldSpec;
use torsam_core::groebner::ModVec;
use torsam_core::monomial::monomials_of_degree;
use torsam_core::poly::Poly;
use torsam_core::ring::{ModulePresentation, Ring};

use crate::textio::{print_module, print_ring};

#[derive(Debug, Clone)]
pub struct FuzzInstance {
    pub index: usize,
    pub ring: Ring,
    /// First module over the ring.
    pub m: ModulePresentation,
    /// Second module over the same ring, for two-module statements.
    pub n: ModulePresentation,
    /// Text-format serialization of the whole instance.
    pub text: String,
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    // Mix the index in so instances are independent of the corpus size.
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e3779b97f4a7c15))
}

/// A random nonzero homogeneous polynomial of the given degree.
fn random_form(rng: &mut ChaCha8Rng, field: FieldSpec, nvars: usize, deg: u32) -> Poly {
    let monos = monomials_of_degree(nvars, deg);
    loop {
        let mut terms = Vec::new();
        for m in &monos {
            if rng.gen_bool(0.5) {
                let c = rng.gen_range(1..field.characteristic().min(7)) as i64;
                terms.push((m.clone(), c));
            }
        }
        if !terms.is_empty() {
            return Poly::from_terms(field, nvars, terms);
        }
    }
}

fn random_ring(rng: &mut ChaCha8Rng, field: FieldSpec) -> Ring {
    let nvars = rng.gen_range(2..=3usize);
    let names: Vec<String> = ["x", "y", "z"][..nvars]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // Shape mix: keep regular rings and shallow quotients both common so
    // hypothesis-triggering cases (free modules, depth-0 rings) show up.
    let nrels = match rng.gen_range(0..10u32) {
        0..=3 => 0,
        4..=7 => 1,
        _ => 2,
    };
    loop {
        let rels: Vec<Poly> = (0..nrels)
            .map(|_| {
                let deg = rng.gen_range(2..=3);
                random_form(rng, field, nvars, deg)
            })
            .collect();
        if let Ok(r) = Ring::new(field, names.clone(), rels) {
            return r;
        }
    }
}

fn random_module(rng: &mut ChaCha8Rng, ring: &Ring) -> ModulePresentation {
    let field = ring.field();
    let nvars = ring.nvars();
    match rng.gen_range(0..6u32) {
        // Free modules: these trigger the "M free" branch of several claims.
        0 => ModulePresentation::ring_module(ring),
        // The residue field.
        1 => ModulePresentation::residue_field(ring),
        // Cyclic quotients R/(f).
        2 | 3 => {
            let deg = rng.gen_range(1..=2u32);
            let f = random_form(rng, field, nvars, deg);
            ModulePresentation::cyclic(ring, vec![f]).expect("homogeneous cyclic module")
        }
        // Rank-2 cokernels with one or two homogeneous relation vectors.
        _ => loop {
            let degs = vec![0i64, rng.gen_range(0..=1i64)];
            let nrels = rng.gen_range(1..=2usize);
            let rels: Vec<ModVec> = (0..nrels)
                .map(|_| {
                    let rel_deg = rng.gen_range(1..=2i64);
                    let comps: Vec<Poly> = degs
                        .iter()
                        .map(|d| {
                            let e = rel_deg - d;
                            if e < 1 || rng.gen_bool(0.3) {
                                Poly::zero(field, nvars)
                            } else {
                                random_form(rng, field, nvars, e as u32)
                            }
                        })
                        .collect();
                    ModVec::new(comps)
                })
                .collect();
            if rels.iter().any(|v| v.is_zero()) {
                continue;
            }
            if let Ok(m) = ModulePresentation::new(ring.clone(), degs, rels) {
                return m;
            }
        },
    }
}

/// Build instance `index` of the corpus for `seed`. Deterministic.
pub fn instance(seed: u64, index: usize, field: FieldSpec) -> FuzzInstance {
    let mut rng = instance_rng(seed, index);
    let ring = random_ring(&mut rng, field);
    let m = random_module(&mut rng, &ring);
    let n = random_module(&mut rng, &ring);
    let text = format!(
        "field {}\n{}\n{}\n{}\n",
        field.characteristic(),
        print_ring("R", &ring),
        print_module("M", "R", &m),
        print_module("N", "R", &n)
    );
    FuzzInstance {
        index,
        ring,
        m,
        n,
        text,
    }
}

pub fn corpus(seed: u64, count: usize, field: FieldSpec) -> Vec<FuzzInstance> {
    (0..count).map(|i| instance(seed, i, field)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_document;

    #[test]
    fn corpus_is_deterministic() {
        let f = FieldSpec::default();
        let a = corpus(42, 10, f);
        let b = corpus(42, 10, f);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.text, y.text);
        }
        let c = instance(43, 0, f);
        assert_ne!(a[0].text, c.text);
    }

    #[test]
    fn instances_replay_through_the_parser() {
        let f = FieldSpec::default();
        for inst in corpus(7, 20, f) {
            let doc = parse_document(&inst.text, f).unwrap();
            let m = doc.module("M").unwrap();
            let n = doc.module("N").unwrap();
            assert_eq!(m.gen_degs(), inst.m.gen_degs(), "index {}", inst.index);
            assert_eq!(m.relations(), inst.m.relations(), "index {}", inst.index);
            assert_eq!(n.relations(), inst.n.relations(), "index {}", inst.index);
            assert_eq!(
                doc.ring("R").unwrap().relations(),
                inst.ring.relations(),
                "index {}",
                inst.index
            );
        }
    }

    #[test]
    fn corpus_has_shape_variety() {
        let f = FieldSpec::default();
        let corpus = corpus(1, 60, f);
        let regular = corpus.iter().filter(|i| i.ring.is_polynomial_ring()).count();
        let quotient = corpus.len() - regular;
        let free = corpus.iter().filter(|i| i.m.relations().is_empty()).count();
        assert!(regular >= 5, "want regular rings, got {}", regular);
        assert!(quotient >= 5, "want quotient rings, got {}", quotient);
        assert!(free >= 3, "want free modules, got {}", free);
    }
}
