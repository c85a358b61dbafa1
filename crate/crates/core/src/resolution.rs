//! Minimal graded free resolutions over the quotient ring and over its
//! ambient polynomial ring, with the invariants read off from them: Betti
//! numbers, regularity, projective dimension, and Hilbert series data
//! (dimension, depth via Auslander-Buchsbaum, multiplicity).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::ModVec;
use crate::ring::{ModulePresentation, Ring, RingInvariants, Submodule};

/// A finite chunk of a complex of twisted free modules
/// F_len <- ... <- F_1 <- F_0 (maps point toward F_0). When `complete` is
/// true the next syzygy module is zero and the chunk is a full resolution.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: Ring,
    twists: Vec<Vec<i64>>,
    /// maps[i] = columns of the differential F_{i+1} -> F_i.
    maps: Vec<Vec<ModVec>>,
    complete: bool,
}

impl FreeComplex {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of the last computed free module.
    pub fn len(&self) -> usize {
        self.twists.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.twists.iter().all(|t| t.is_empty())
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn twists(&self, i: usize) -> &[i64] {
        static EMPTY: [i64; 0] = [];
        self.twists.get(i).map(|t| t.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn betti(&self, i: usize) -> usize {
        self.twists(i).len()
    }

    /// Columns of the differential F_i -> F_{i-1}, for 1 <= i <= len.
    pub fn differential(&self, i: usize) -> &[ModVec] {
        &self.maps[i - 1]
    }

    /// Graded Betti numbers as sorted (homological degree, twist, count).
    pub fn graded_betti(&self) -> Vec<(usize, i64, usize)> {
        let mut out: Vec<(usize, i64, usize)> = Vec::new();
        for (i, ts) in self.twists.iter().enumerate() {
            let mut sorted = ts.clone();
            sorted.sort();
            for t in sorted {
                match out.last_mut() {
                    Some((li, lt, c)) if *li == i && *lt == t => *c += 1,
                    _ => out.push((i, t, 1)),
                }
            }
        }
        out
    }

    /// Castelnuovo-Mumford style regularity of the computed chunk:
    /// max over i, j of twist_{i,j} - i.
    pub fn regularity(&self) -> Option<i64> {
        self.twists
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |t| t - i as i64))
            .max()
    }

    /// Check d_i . d_{i+1} = 0 over R for every pair of computed maps.
    pub fn is_complex(&self) -> bool {
        let ring = &self.ring;
        for i in 1..self.maps.len() {
            let prev = &self.maps[i - 1];
            for col in &self.maps[i] {
                let mut acc = ModVec::zero(
                    ring.field(),
                    ring.nvars(),
                    self.twists[i - 1].len(),
                );
                for (j, p) in prev.iter().enumerate() {
                    acc = acc
                        .add(&p.mul_poly(col.comp(j)).expect("same ring"))
                        .expect("rank match");
                }
                if !ring.nf_vec(&acc).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Remove redundant generators: while some relation has a unit (degree zero)
/// entry, the corresponding generator is expressible in the others and both
/// the generator and the relation are pruned.
pub fn minimal_presentation(pres: &ModulePresentation) -> ModulePresentation {
    let ring = pres.ring().clone();
    let f = ring.field();
    let mut gen_degs = pres.gen_degs().to_vec();
    let mut rels: Vec<ModVec> = pres.relations().to_vec();
    'outer: loop {
        for (c, col) in rels.iter().enumerate() {
            for i in 0..gen_degs.len() {
                let entry = col.comp(i);
                if entry.homogeneous_degree() != Some(0) {
                    continue;
                }
                let u = entry.leading().expect("nonzero").1;
                let uinv = f.inv(u);
                let pivot = col.clone();
                let mut new_rels = Vec::new();
                for (c2, col2) in rels.iter().enumerate() {
                    if c2 == c {
                        continue;
                    }
                    let a = col2.comp(i).scale(uinv);
                    let adj = pivot.mul_poly(&a).expect("same ring");
                    let reduced = ring.nf_vec(&col2.sub(&adj).expect("rank match"));
                    let comps: Vec<_> = reduced
                        .comps()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .map(|(_, p)| p.clone())
                        .collect();
                    let v = ModVec::new(comps);
                    if !v.is_zero() {
                        new_rels.push(v);
                    }
                }
                gen_degs.remove(i);
                rels = new_rels;
                continue 'outer;
            }
        }
        break;
    }
    ModulePresentation::new(ring, gen_degs, rels).expect("pruning preserves homogeneity")
}

/// Minimal graded free resolution of M, computed out to at most `max_steps`
/// syzygy modules. Minimality is automatic: each differential's columns form
/// a minimal generating set, so all entries lie in m.
pub fn minimal_resolution(pres: &ModulePresentation, max_steps: usize) -> FreeComplex {
    let pres = minimal_presentation(pres);
    let ring = pres.ring().clone();
    let mut twists = vec![pres.gen_degs().to_vec()];
    let mut maps: Vec<Vec<ModVec>> = Vec::new();
    if pres.rank() == 0 {
        return FreeComplex {
            ring,
            twists,
            maps,
            complete: true,
        };
    }
    let mut ambient_twists = pres.gen_degs().to_vec();
    let mut current = pres.relation_submodule().minimal_gens();
    let mut complete = current.is_empty();
    for _ in 0..max_steps {
        if current.is_empty() {
            complete = true;
            break;
        }
        let degs: Vec<i64> = current
            .iter()
            .map(|g| {
                g.homogeneous_degree(&ambient_twists)
                    .expect("differential columns are homogeneous")
            })
            .collect();
        maps.push(current.clone());
        twists.push(degs.clone());
        let sub = Submodule::new(ring.clone(), ambient_twists.clone(), current.clone());
        let syz = sub.syzygies_of_gens(&current);
        current = Submodule::new(ring.clone(), degs.clone(), syz).minimal_gens();
        ambient_twists = degs;
    }
    if current.is_empty() {
        complete = true;
    }
    FreeComplex {
        ring,
        twists,
        maps,
        complete,
    }
}

/// The same module viewed over the ambient polynomial ring: the defining
/// ideal times each generator joins the relations.
pub fn ambient_presentation(pres: &ModulePresentation) -> ModulePresentation {
    let ring = pres.ring();
    if ring.is_polynomial_ring() {
        return pres.clone();
    }
    let ambient = ring.ambient();
    let f = ring.field();
    let nv = ring.nvars();
    let rank = pres.rank();
    let mut rels: Vec<ModVec> = pres.relations().to_vec();
    for rel in ring.relations() {
        for i in 0..rank {
            let mut comps: Vec<_> = ModVec::zero(f, nv, rank).comps().to_vec();
            comps[i] = rel.clone();
            rels.push(ModVec::new(comps));
        }
    }
    ModulePresentation::new(ambient, pres.gen_degs().to_vec(), rels)
        .expect("relations stay homogeneous")
}

/// Dimension, depth, and multiplicity data extracted from the minimal
/// resolution over the ambient polynomial ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub dim: usize,
    pub depth: usize,
    pub multiplicity: i64,
    /// Reduced Hilbert numerator Q with Hilb = z^offset Q(z) / (1-z)^dim,
    /// Q(1) != 0.
    pub numerator: Vec<i64>,
    pub numerator_offset: i64,
    pub projdim_ambient: usize,
}

impl ModuleInvariants {
    /// Value of the Hilbert function dim_k M_d.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        let mut acc = 0i64;
        for (k, q) in self.numerator.iter().enumerate() {
            let e = d - self.numerator_offset - k as i64;
            if e < 0 {
                continue;
            }
            if self.dim == 0 {
                if e == 0 {
                    acc += q;
                }
            } else {
                acc += q * binomial(e + self.dim as i64 - 1, self.dim as i64 - 1);
            }
        }
        acc
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.dim == self.depth
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc = 1i64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn module_invariants(pres: &ModulePresentation) -> Result<ModuleInvariants> {
    let ring = pres.ring();
    let nvars = ring.nvars();
    let ap = ambient_presentation(pres);
    let res = minimal_resolution(&ap, nvars + 1);
    debug_assert!(res.is_complete(), "Hilbert syzygy theorem");
    if res.betti(0) == 0 {
        return Err(Error::ZeroModule);
    }
    let projdim_ambient = (0..=res.len()).rev().find(|&i| res.betti(i) > 0).unwrap();
    // Alternating sum of twists gives the numerator over (1-z)^nvars.
    let lo = res
        .graded_betti()
        .iter()
        .map(|(_, t, _)| *t)
        .min()
        .unwrap();
    let hi = res
        .graded_betti()
        .iter()
        .map(|(_, t, _)| *t)
        .max()
        .unwrap();
    let mut num = vec![0i64; (hi - lo + 1) as usize];
    for (i, t, c) in res.graded_betti() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        num[(t - lo) as usize] += sign * c as i64;
    }
    // Cancel (1-z) factors while the numerator vanishes at z = 1.
    let mut cancels = 0usize;
    while num.iter().sum::<i64>() == 0 && cancels < nvars {
        let mut q = Vec::with_capacity(num.len());
        let mut run = 0i64;
        for a in &num {
            run += a;
            q.push(run);
        }
        debug_assert_eq!(q.pop(), Some(0));
        num = q;
        cancels += 1;
    }
    // Trim leading/trailing zeros, adjusting the offset.
    let mut offset = lo;
    while num.first() == Some(&0) {
        num.remove(0);
        offset += 1;
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    Ok(ModuleInvariants {
        dim: nvars - cancels,
        depth: nvars - projdim_ambient,
        multiplicity: num.iter().sum(),
        numerator: num,
        numerator_offset: offset,
        projdim_ambient,
    })
}

pub fn compute_ring_invariants(ring: &Ring) -> RingInvariants {
    let inv = module_invariants(&ModulePresentation::ring_module(ring))
        .expect("the ring is a nonzero module over itself");
    RingInvariants {
        dim: inv.dim,
        depth: inv.depth,
        multiplicity: inv.multiplicity,
        hilbert_numerator: inv.numerator,
    }
}

/// Projective dimension over R itself; None means infinite. Finite
/// projective dimension forces pd <= depth R (Auslander-Buchsbaum), so the
/// resolution is only chased that far.
pub fn projdim_over_ring(pres: &ModulePresentation) -> Result<Option<usize>> {
    let ring = pres.ring();
    let bound = ring.depth() + 1;
    let res = minimal_resolution(pres, bound);
    if res.betti(0) == 0 {
        return Err(Error::ZeroModule);
    }
    if res.is_complete() {
        Ok(Some(
            (0..=res.len()).rev().find(|&i| res.betti(i) > 0).unwrap(),
        ))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::Poly;
    use crate::ring::kernel_of_map;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn quotient_xy(rel_builder: impl Fn(&Poly, &Poly) -> Poly) -> Ring {
        let x = Poly::var(f(), 2, 0);
        let y = Poly::var(f(), 2, 1);
        let rel = rel_builder(&x, &y);
        Ring::new(f(), vec!["x".into(), "y".into()], vec![rel]).unwrap()
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let r = Ring::polynomial(f(), 2);
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_resolution(&k, 5);
        assert!(res.is_complete());
        assert_eq!(res.betti(0), 1);
        assert_eq!(res.betti(1), 2);
        assert_eq!(res.betti(2), 1);
        assert_eq!(res.betti(3), 0);
        assert_eq!(res.twists(2), &[2]);
        assert_eq!(res.regularity(), Some(0));
        assert!(res.is_complex());
    }

    #[test]
    fn koszul_is_exact_in_degree_one() {
        let r = Ring::polynomial(f(), 3);
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_resolution(&k, 4);
        // ker d_1 = im d_2
        let ker = kernel_of_map(
            &r,
            res.twists(1),
            res.twists(0),
            res.differential(1),
        )
        .unwrap();
        let im = Submodule::new(r.clone(), res.twists(1).to_vec(), res.differential(2).to_vec());
        assert!(ker.equals(&im).unwrap());
    }

    #[test]
    fn periodic_resolution_over_hypersurface() {
        // k over k[x,y]/(x^2): Betti numbers 1, 2, 2, 2, ...
        let r = quotient_xy(|x, _| x.mul(x).unwrap());
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_resolution(&k, 4);
        assert_eq!(res.betti(0), 1);
        for i in 1..=4 {
            assert_eq!(res.betti(i), 2, "betti_{}", i);
        }
        assert!(!res.is_complete());
        assert!(res.is_complex());
    }

    #[test]
    fn minimal_presentation_prunes_units() {
        // coker of the single column (1, x)^T with generator degrees (1, 0)
        // over F_p[x,y]: the relation e0 + x e1 = 0 makes e0 redundant and
        // the module is free on e1.
        let r = Ring::polynomial(f(), 2);
        let x = Poly::var(f(), 2, 0);
        let col = ModVec::new(vec![Poly::one(f(), 2), x]);
        let pres = ModulePresentation::new(r, vec![1, 0], vec![col]).unwrap();
        let min = minimal_presentation(&pres);
        assert_eq!(min.rank(), 1);
        assert_eq!(min.gen_degs(), &[0]);
        assert!(min.relations().is_empty());
    }

    #[test]
    fn ring_invariants_examples() {
        // F_p[x,y]/(x^2): dim 1, depth 1, e = 2.
        let r = quotient_xy(|x, _| x.mul(x).unwrap());
        assert_eq!(r.dim(), 1);
        assert_eq!(r.depth(), 1);
        assert_eq!(r.multiplicity(), 2);
        assert!(r.is_cohen_macaulay());
        assert!(r.is_hypersurface());

        // F_p[x,y]/(xy): dim 1, depth 1, e = 2.
        let rxy = quotient_xy(|x, y| x.mul(y).unwrap());
        assert_eq!(rxy.dim(), 1);
        assert_eq!(rxy.depth(), 1);
        assert_eq!(rxy.multiplicity(), 2);

        // Polynomial ring: dim = depth = nvars, e = 1.
        let p3 = Ring::polynomial(f(), 3);
        assert_eq!(p3.dim(), 3);
        assert_eq!(p3.depth(), 3);
        assert_eq!(p3.multiplicity(), 1);
    }

    #[test]
    fn module_invariants_examples() {
        let r = Ring::polynomial(f(), 2);
        // k: dim 0, depth 0, e = 1.
        let k = ModulePresentation::residue_field(&r);
        let ik = module_invariants(&k).unwrap();
        assert_eq!((ik.dim, ik.depth, ik.multiplicity), (0, 0, 1));
        assert_eq!(ik.hilbert_function(0), 1);
        assert_eq!(ik.hilbert_function(1), 0);
        // R itself: hilbert function d + 1.
        let m = ModulePresentation::ring_module(&r);
        let im = module_invariants(&m).unwrap();
        assert_eq!((im.dim, im.depth, im.multiplicity), (2, 2, 1));
        for d in 0..5i64 {
            assert_eq!(im.hilbert_function(d), d + 1);
        }
    }

    #[test]
    fn hilbert_function_matches_degreewise() {
        let r = quotient_xy(|x, _| x.mul(x).unwrap());
        let m = ModulePresentation::ring_module(&r);
        let inv = module_invariants(&m).unwrap();
        let mut real = crate::degreewise::Realization::quotient(&m);
        for d in 0..8i64 {
            assert_eq!(inv.hilbert_function(d), real.dim(d) as i64, "degree {}", d);
        }
    }

    #[test]
    fn projdim_examples() {
        let p2 = Ring::polynomial(f(), 2);
        let k = ModulePresentation::residue_field(&p2);
        assert_eq!(projdim_over_ring(&k).unwrap(), Some(2));
        let free = ModulePresentation::free(p2.clone(), vec![0, 3]);
        assert_eq!(projdim_over_ring(&free).unwrap(), Some(0));

        let r = quotient_xy(|x, _| x.mul(x).unwrap());
        let kk = ModulePresentation::residue_field(&r);
        assert_eq!(projdim_over_ring(&kk).unwrap(), None);
        // R/(x) over F_p[x,y]/(x^2) has an infinite periodic resolution.
        let x = Poly::var(f(), 2, 0);
        let mx = ModulePresentation::cyclic(&r, vec![x]).unwrap();
        assert_eq!(projdim_over_ring(&mx).unwrap(), None);
    }
}
