//! Degreewise realization of graded subquotients X = (U + B)/B of twisted
//! free modules: in each internal degree X is a finite dimensional k-vector
//! space with explicit lifts into the cover, so lengths, multiplication maps,
//! and coordinates of classes all reduce to dense linear algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{power_ideal_vectors, ModVec};
use crate::linalg::{Echelon, MatFp};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::{ModulePresentation, Ring};

/// Monomial basis of the twisted free module F = (+) R(-t_i) in one internal
/// degree: pairs (generator index, standard monomial).
pub fn free_basis(ring: &Ring, twists: &[i64], d: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (i, t) in twists.iter().enumerate() {
        let e = d - t;
        if e < 0 {
            continue;
        }
        for m in ring.std_monomials(e as u32) {
            out.push((i, m));
        }
    }
    out
}

struct DegreeData {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Vec<u32>), usize>,
    ech: Echelon,
    /// Lift in the cover of each tagged basis element of the subquotient.
    lifts: Vec<ModVec>,
}

impl DegreeData {
    fn dim(&self) -> usize {
        self.ech.tagged_count()
    }
}

/// A graded subquotient realized degree by degree. The numerator is either
/// the full cover (quotient module case) or an explicit generator list.
/// Methods take &mut self because degree data is cached on first use.
pub struct Realization {
    ring: Ring,
    twists: Vec<i64>,
    /// None: numerator is the whole cover. Some: (degree, generator) pairs.
    num: Option<Vec<(i64, ModVec)>>,
    den: Vec<ModVec>,
    cache: HashMap<i64, DegreeData>,
}

impl Realization {
    /// The quotient module presented by `pres`.
    pub fn quotient(pres: &ModulePresentation) -> Self {
        Realization {
            ring: pres.ring().clone(),
            twists: pres.gen_degs().to_vec(),
            num: None,
            den: pres.relations().to_vec(),
            cache: HashMap::new(),
        }
    }

    /// The subquotient (span(num) + span(den)) / span(den) of the cover.
    pub fn subquotient(
        ring: Ring,
        twists: Vec<i64>,
        num: Vec<ModVec>,
        den: Vec<ModVec>,
    ) -> Result<Self> {
        let mut tagged = Vec::new();
        for g in num {
            let g = ring.nf_vec(&g);
            if g.is_zero() {
                continue;
            }
            let Some(e) = g.homogeneous_degree(&twists) else {
                return Err(Error::NotHomogeneous("subquotient generator".into()));
            };
            tagged.push((e, g));
        }
        Ok(Realization {
            ring,
            twists,
            num: Some(tagged),
            den,
            cache: HashMap::new(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cover_twists(&self) -> &[i64] {
        &self.twists
    }

    /// Degrees of the chosen generators (cover generators in the quotient
    /// case). The module vanishes below the minimum and is controlled above
    /// the maximum because R is generated in degree 1.
    pub fn gen_degrees(&self) -> Vec<i64> {
        match &self.num {
            None => self.twists.clone(),
            Some(gens) => gens.iter().map(|(e, _)| *e).collect(),
        }
    }

    pub fn min_gen_degree(&self) -> Option<i64> {
        self.gen_degrees().into_iter().min()
    }

    pub fn max_gen_degree(&self) -> Option<i64> {
        self.gen_degrees().into_iter().max()
    }

    fn degree_data(&mut self, d: i64) -> &DegreeData {
        if !self.cache.contains_key(&d) {
            let ring = self.ring.clone();
            let twists = self.twists.clone();
            let basis = free_basis(&ring, &twists, d);
            let index: HashMap<(usize, Vec<u32>), usize> = basis
                .iter()
                .enumerate()
                .map(|(k, (i, m))| ((*i, m.exps().to_vec()), k))
                .collect();
            let field = ring.field();
            let mut ech = Echelon::new(field, basis.len());
            // Span of the denominator in this degree.
            for rel in &self.den {
                let Some(e) = rel.homogeneous_degree(&twists) else {
                    continue;
                };
                if e > d {
                    continue;
                }
                for m in ring.std_monomials((d - e) as u32) {
                    let v = ring.nf_vec(&rel.mul_term(&m, 1));
                    let dense = dense_coords(&index, &v, basis.len());
                    ech.insert(dense, None);
                }
            }
            // Tagged rows: a basis of the subquotient with recorded lifts.
            let mut lifts = Vec::new();
            match &self.num {
                None => {
                    for (k, (i, m)) in basis.iter().enumerate() {
                        let mut unit = vec![0u64; basis.len()];
                        unit[k] = 1;
                        if ech.insert(unit, Some(lifts.len())) {
                            let mut comps: Vec<Poly> =
                                ModVec::zero(field, ring.nvars(), twists.len())
                                    .comps()
                                    .to_vec();
                            comps[*i] = Poly::monomial(field, m.clone(), 1);
                            lifts.push(ModVec::new(comps));
                        }
                    }
                }
                Some(gens) => {
                    for (e, g) in gens {
                        if *e > d {
                            continue;
                        }
                        for m in ring.std_monomials((d - e) as u32) {
                            let v = ring.nf_vec(&g.mul_term(&m, 1));
                            let dense = dense_coords(&index, &v, basis.len());
                            if ech.insert(dense, Some(lifts.len())) {
                                lifts.push(v.clone());
                            }
                        }
                    }
                }
            }
            self.cache.insert(
                d,
                DegreeData {
                    basis,
                    index,
                    ech,
                    lifts,
                },
            );
        }
        &self.cache[&d]
    }

    /// dim_k X_d.
    pub fn dim(&mut self, d: i64) -> usize {
        self.degree_data(d).dim()
    }

    /// Lift in the cover of the t-th basis element of X_d.
    pub fn lift(&mut self, d: i64, t: usize) -> ModVec {
        self.degree_data(d).lifts[t].clone()
    }

    /// Coordinates of the class of a homogeneous cover vector of degree d.
    /// The vector must represent an element of the subquotient.
    pub fn coords(&mut self, v: &ModVec, d: i64) -> Vec<u64> {
        let ring = self.ring.clone();
        let v = ring.nf_vec(v);
        let data = self.degree_data(d);
        let dense = dense_coords(&data.index, &v, data.basis.len());
        let ntags = data.dim();
        data.ech
            .coords(&dense, ntags)
            .expect("vector lies in the realized subquotient")
    }

    /// Matrix of multiplication by a homogeneous polynomial p of degree e,
    /// as a map X_d -> X_{d+e} (columns indexed by the basis of X_d).
    pub fn mult_matrix(&mut self, d: i64, p: &Poly) -> MatFp {
        let e = p.homogeneous_degree().unwrap_or(0) as i64;
        let src_dim = self.dim(d);
        let tgt_dim = self.dim(d + e);
        let field = self.ring.field();
        let mut cols = Vec::with_capacity(src_dim);
        for t in 0..src_dim {
            let lift = self.lift(d, t);
            let image = lift.mul_poly(p).expect("same ring");
            cols.push(self.coords(&image, d + e));
        }
        let mut rows = vec![vec![0u64; src_dim]; tgt_dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                rows[i][j] = *c;
            }
        }
        MatFp::from_rows(field, src_dim, rows)
    }

    /// Largest degree with X_d nonzero, when X has finite length; scanning
    /// stops (with an error) `limit` degrees past the last generator.
    pub fn finite_support_end(&mut self, limit: i64) -> Result<Option<i64>> {
        let Some(lo) = self.min_gen_degree() else {
            return Ok(None);
        };
        let hi_gen = self.max_gen_degree().unwrap();
        let mut last_nonzero: Option<i64> = None;
        let mut d = lo;
        loop {
            let dim = self.dim(d);
            if dim > 0 {
                last_nonzero = Some(d);
            } else if d >= hi_gen {
                // The ring is generated in degree 1, so X_e = R_1 X_{e-1} for
                // e past every generator degree; one gap kills everything.
                return Ok(last_nonzero);
            }
            if d - hi_gen > limit {
                return Err(Error::NotFiniteLength);
            }
            d += 1;
        }
    }

    /// Total length, for finite length modules.
    pub fn total_length(&mut self, limit: i64) -> Result<u64> {
        let Some(end) = self.finite_support_end(limit)? else {
            return Ok(0);
        };
        let lo = self.min_gen_degree().unwrap();
        let mut total = 0u64;
        for d in lo..=end {
            total += self.dim(d) as u64;
        }
        Ok(total)
    }

    /// Hilbert function values dim X_d for d in [lo, hi].
    pub fn dims_in_range(&mut self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.dim(d)).collect()
    }
}

/// Realization of m^n M inside the cover of M (as the subquotient
/// (m^n F + B)/B).
pub fn power_subquotient(m: &ModulePresentation, n: u32) -> Realization {
    let ring = m.ring().clone();
    let num = power_ideal_vectors(ring.field(), ring.nvars(), m.rank(), n);
    Realization::subquotient(ring, m.gen_degs().to_vec(), num, m.relations().to_vec())
        .expect("monomial generators are homogeneous")
}

fn dense_coords(
    index: &HashMap<(usize, Vec<u32>), usize>,
    v: &ModVec,
    len: usize,
) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, p) in v.comps().iter().enumerate() {
        for (m, c) in p.terms() {
            let k = index
                .get(&(i, m.exps().to_vec()))
                .expect("normal form lies in the standard monomial span");
            out[*k] = *c;
        }
    }
    out
}

/// Length of M/m^{n+1}M, the i = 0 Hilbert-Samuel value.
pub fn hs_value(m: &ModulePresentation, n: u32) -> u64 {
    if m.is_zero_presentation() {
        return 0;
    }
    let q = m.quotient_by_power(n + 1);
    let mut real = Realization::quotient(&q);
    // Support certainly ends within n + 1 degrees of the last generator.
    real.total_length(n as i64 + 2)
        .expect("quotient by a power of m has finite length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn hilbert_function_of_polynomial_ring() {
        let r = Ring::polynomial(f(), 3);
        let m = ModulePresentation::ring_module(&r);
        let mut real = Realization::quotient(&m);
        // dim R_d = C(d+2, 2)
        for d in 0..5i64 {
            let expected = ((d + 1) * (d + 2) / 2) as usize;
            assert_eq!(real.dim(d), expected);
        }
    }

    #[test]
    fn hs_values_of_plane() {
        // R = F_p[x,y]: l(R/m^{n+1}) = C(n+2, 2)
        let r = Ring::polynomial(f(), 2);
        let m = ModulePresentation::ring_module(&r);
        for n in 0..6u32 {
            let expected = ((n as u64 + 1) * (n as u64 + 2)) / 2;
            assert_eq!(hs_value(&m, n), expected);
        }
    }

    #[test]
    fn hs_values_of_quotient() {
        // R = F_p[x,y]/(x^2): l(R/m^{n+1}) = 2n + 1
        let x = Poly::var(f(), 2, 0);
        let x2 = x.mul(&x).unwrap();
        let r = Ring::new(f(), vec!["x".into(), "y".into()], vec![x2]).unwrap();
        let m = ModulePresentation::ring_module(&r);
        for n in 0..6u64 {
            assert_eq!(hs_value(&m, n as u32), 2 * n + 1);
        }
    }

    #[test]
    fn finite_length_detection() {
        let r = Ring::polynomial(f(), 2);
        // R/m^2 has length 3, support {0, 1}.
        let m = ModulePresentation::ring_module(&r).quotient_by_power(2);
        let mut real = Realization::quotient(&m);
        assert_eq!(real.finite_support_end(10).unwrap(), Some(1));
        assert_eq!(real.total_length(10).unwrap(), 3);
        // R itself is not finite length.
        let mut rr = Realization::quotient(&ModulePresentation::ring_module(&r));
        assert!(rr.total_length(10).is_err());
    }

    #[test]
    fn mult_matrix_consistency() {
        // Multiplication by x on (F_p[x,y]/(x^2))_1 -> _2 has rank 1 (x*x = 0).
        let x = Poly::var(f(), 2, 0);
        let x2 = x.mul(&x).unwrap();
        let r = Ring::new(f(), vec!["x".into(), "y".into()], vec![x2]).unwrap();
        let m = ModulePresentation::ring_module(&r);
        let mut real = Realization::quotient(&m);
        let mat = real.mult_matrix(1, &x);
        assert_eq!(mat.rank(), 1);
        let y = Poly::var(f(), 2, 1);
        let maty = real.mult_matrix(1, &y);
        assert_eq!(maty.rank(), 2);
    }

    #[test]
    fn subquotient_power_dims() {
        // m^2 inside R = F_p[x,y]: dims 0, 0, 3, 4, 5, ...
        let r = Ring::polynomial(f(), 2);
        let m = ModulePresentation::ring_module(&r);
        let mut pw = power_subquotient(&m, 2);
        assert_eq!(pw.dims_in_range(0, 4), vec![0, 0, 3, 4, 5]);
        // m^2/m^3: dims 0, 0, 3, 0 -- realized as subquotient with extra den.
        let q = m.quotient_by_power(3);
        let num = power_ideal_vectors(f(), 2, 1, 2);
        let mut sq =
            Realization::subquotient(r.clone(), vec![0], num, q.relations().to_vec()).unwrap();
        assert_eq!(sq.total_length(5).unwrap(), 3);
        // m^s N = 0 for N = k.
        let k = ModulePresentation::residue_field(&r);
        let mut pk = power_subquotient(&k, 1);
        assert_eq!(pk.total_length(5).unwrap(), 0);
    }
}
