//! Graded quotient rings R = F_p[x_1..x_d]/I with homogeneous relations of
//! degree >= 2, and finitely generated graded modules presented as cokernels
//! of homogeneous matrices. The ambient polynomial ring P is always retained;
//! the irrelevant maximal ideal m is the ideal of all variables.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{
    groebner_basis, normal_form, power_ideal_vectors, GbState, ModVec,
};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Poly;

/// Invariants of the ring, filled lazily by the resolution engine.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingInvariants {
    pub dim: usize,
    pub depth: usize,
    pub multiplicity: i64,
    /// Numerator of the Hilbert series after cancelling (1-z) factors.
    pub hilbert_numerator: Vec<i64>,
}

#[derive(Debug)]
struct RingData {
    field: FieldSpec,
    var_names: Vec<String>,
    relations: Vec<Poly>,
    ideal_gb: Vec<ModVec>,
    gorenstein_hint: bool,
    invariants: OnceLock<RingInvariants>,
}

/// A standard graded quotient ring; cheap to clone (shared).
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.var_names == other.0.var_names
                && self.0.relations == other.0.relations)
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(field: FieldSpec, var_names: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        let nvars = var_names.len();
        let mut rels = Vec::new();
        for r in &relations {
            if r.is_zero() {
                continue;
            }
            if r.nvars() != nvars {
                return Err(Error::VariableMismatch(r.nvars(), nvars));
            }
            let Some(d) = r.homogeneous_degree() else {
                return Err(Error::NotHomogeneous(format!("{}", r.display(&var_names))));
            };
            if d < 2 {
                return Err(Error::NotHomogeneous(format!(
                    "relation of degree {} (must be >= 2)",
                    d
                )));
            }
            rels.push(r.clone());
        }
        let gens: Vec<ModVec> = rels.iter().map(|p| ModVec::from_poly(p.clone())).collect();
        let ideal_gb = groebner_basis(field, nvars, 1, &gens);
        Ok(Ring(Arc::new(RingData {
            field,
            var_names,
            relations: rels,
            ideal_gb,
            gorenstein_hint: false,
            invariants: OnceLock::new(),
        })))
    }

    /// Polynomial ring with default variable names x1..xd.
    pub fn polynomial(field: FieldSpec, nvars: usize) -> Ring {
        let names = (1..=nvars).map(|i| format!("x{}", i)).collect();
        Ring::new(field, names, vec![]).expect("no relations")
    }

    pub fn with_gorenstein_hint(self) -> Ring {
        let d = &self.0;
        Ring(Arc::new(RingData {
            field: d.field,
            var_names: d.var_names.clone(),
            relations: d.relations.clone(),
            ideal_gb: d.ideal_gb.clone(),
            gorenstein_hint: true,
            invariants: OnceLock::new(),
        }))
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.var_names.len()
    }

    /// Embedding dimension; equals the variable count because relations have
    /// degree >= 2.
    pub fn embdim(&self) -> usize {
        self.nvars()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }

    pub fn relations(&self) -> &[Poly] {
        &self.0.relations
    }

    pub fn ideal_gb(&self) -> &[ModVec] {
        &self.0.ideal_gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.relations.is_empty()
    }

    pub fn gorenstein_hint(&self) -> bool {
        self.0.gorenstein_hint
    }

    /// The ambient polynomial ring P on the same variables.
    pub fn ambient(&self) -> Ring {
        if self.is_polynomial_ring() {
            self.clone()
        } else {
            Ring::new(self.field(), self.0.var_names.clone(), vec![]).expect("no relations")
        }
    }

    /// Normal form of a polynomial modulo the defining ideal.
    pub fn nf(&self, p: &Poly) -> Poly {
        if self.0.ideal_gb.is_empty() {
            return p.clone();
        }
        normal_form(&ModVec::from_poly(p.clone()), &self.0.ideal_gb)
            .comp(0)
            .clone()
    }

    pub fn nf_vec(&self, v: &ModVec) -> ModVec {
        ModVec::new(v.comps().iter().map(|p| self.nf(p)).collect())
    }

    /// k-basis of R in internal degree d: standard monomials (those outside
    /// the leading term ideal of I).
    pub fn std_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| {
                !self.0.ideal_gb.iter().any(|g| {
                    let (_, lm, _) = g.leading().expect("gb elements nonzero");
                    lm.divides(m)
                })
            })
            .collect()
    }

    pub fn invariants(&self) -> &RingInvariants {
        self.0
            .invariants
            .get_or_init(|| crate::resolution::compute_ring_invariants(self))
    }

    pub fn dim(&self) -> usize {
        self.invariants().dim
    }

    pub fn depth(&self) -> usize {
        self.invariants().depth
    }

    pub fn multiplicity(&self) -> i64 {
        self.invariants().multiplicity
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.dim() == self.depth()
    }

    pub fn is_regular(&self) -> bool {
        self.is_polynomial_ring()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.embdim() <= self.depth() + 1
    }

    /// Linear form with the given coefficients.
    pub fn linear_form(&self, coeffs: &[i64]) -> Poly {
        let f = self.field();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(self.nvars(), i), *c))
            .collect();
        Poly::from_terms(f, self.nvars(), terms)
    }
}

/// A finitely generated graded module, presented as the cokernel of a
/// homogeneous matrix between twisted free modules. Column j is a relation;
/// generator i of the cover sits in internal degree `gen_degs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation {
    ring: Ring,
    gen_degs: Vec<i64>,
    relations: Vec<ModVec>,
}

impl ModulePresentation {
    pub fn new(ring: Ring, gen_degs: Vec<i64>, relations: Vec<ModVec>) -> Result<Self> {
        let rank = gen_degs.len();
        let mut rels = Vec::new();
        for (j, col) in relations.into_iter().enumerate() {
            if col.rank() != rank {
                return Err(Error::AmbientMismatch(col.rank(), rank));
            }
            let col = ring.nf_vec(&col);
            if col.is_zero() {
                continue;
            }
            if !col.is_homogeneous(&gen_degs) {
                return Err(Error::NotHomogeneous(format!("relation column {}", j)));
            }
            rels.push(col);
        }
        Ok(ModulePresentation {
            ring,
            gen_degs,
            relations: rels,
        })
    }

    /// The free module R(-d1) + ... + R(-dr).
    pub fn free(ring: Ring, gen_degs: Vec<i64>) -> Self {
        ModulePresentation {
            ring,
            gen_degs,
            relations: vec![],
        }
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &Ring) -> Self {
        ModulePresentation::free(ring.clone(), vec![0])
    }

    /// Cyclic module R/(f1..ft).
    pub fn cyclic(ring: &Ring, ideal_gens: Vec<Poly>) -> Result<Self> {
        let rels = ideal_gens.into_iter().map(ModVec::from_poly).collect();
        ModulePresentation::new(ring.clone(), vec![0], rels)
    }

    /// The residue field k = R/m.
    pub fn residue_field(ring: &Ring) -> Self {
        let vars = (0..ring.nvars())
            .map(|i| Poly::var(ring.field(), ring.nvars(), i))
            .collect();
        ModulePresentation::cyclic(ring, vars).expect("variables are homogeneous")
    }

    /// The zero module.
    pub fn zero(ring: &Ring) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            gen_degs: vec![],
            relations: vec![],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gen_degs(&self) -> &[i64] {
        &self.gen_degs
    }

    pub fn rank(&self) -> usize {
        self.gen_degs.len()
    }

    pub fn relations(&self) -> &[ModVec] {
        &self.relations
    }

    pub fn is_zero_presentation(&self) -> bool {
        self.gen_degs.is_empty()
    }

    /// Direct sum with another presentation over the same ring.
    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let mut gen_degs = self.gen_degs.clone();
        gen_degs.extend_from_slice(&other.gen_degs);
        let mut rels = Vec::new();
        for r in &self.relations {
            rels.push(r.concat(&ModVec::zero(f, nv, other.rank())));
        }
        for r in &other.relations {
            rels.push(ModVec::zero(f, nv, self.rank()).concat(r));
        }
        Ok(ModulePresentation {
            ring: self.ring.clone(),
            gen_degs,
            relations: rels,
        })
    }

    /// Shift all internal degrees by `s` (twist by -s).
    pub fn shift(&self, s: i64) -> ModulePresentation {
        ModulePresentation {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.iter().map(|d| d + s).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Tensor product presentation M (x) N: generators e_i (x) f_j, relations
    /// from both factors spread across the other's generators.
    pub fn tensor(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let r = self.rank();
        let s = other.rank();
        let mut gen_degs = Vec::with_capacity(r * s);
        for a in &self.gen_degs {
            for b in &other.gen_degs {
                gen_degs.push(a + b);
            }
        }
        // index (i, j) -> i*s + j
        let mut rels = Vec::new();
        for col in &self.relations {
            for j in 0..s {
                let mut v = ModVec::zero(f, nv, r * s);
                let mut comps: Vec<Poly> = v.comps().to_vec();
                for i in 0..r {
                    comps[i * s + j] = col.comp(i).clone();
                }
                v = ModVec::new(comps);
                rels.push(v);
            }
        }
        for col in &other.relations {
            for i in 0..r {
                let mut comps: Vec<Poly> =
                    ModVec::zero(f, nv, r * s).comps().to_vec();
                for j in 0..s {
                    comps[i * s + j] = col.comp(j).clone();
                }
                rels.push(ModVec::new(comps));
            }
        }
        ModulePresentation::new(self.ring.clone(), gen_degs, rels)
    }

    /// The relation submodule of the cover (image of the presentation matrix).
    pub fn relation_submodule(&self) -> Submodule {
        Submodule::new(
            self.ring.clone(),
            self.gen_degs.clone(),
            self.relations.clone(),
        )
    }

    /// Submodule of the cover representing m^n * M (image of m^n F in M,
    /// together with the relations).
    pub fn power_in_cover(&self, n: u32) -> Submodule {
        let mut gens = power_ideal_vectors(
            self.ring.field(),
            self.ring.nvars(),
            self.rank(),
            n,
        );
        gens.extend(self.relations.iter().cloned());
        Submodule::new(self.ring.clone(), self.gen_degs.clone(), gens)
    }

    /// Presentation of the quotient M / m^{n+1} M.
    pub fn quotient_by_power(&self, n1: u32) -> ModulePresentation {
        let mut rels = self.relations.clone();
        rels.extend(power_ideal_vectors(
            self.ring.field(),
            self.ring.nvars(),
            self.rank(),
            n1,
        ));
        ModulePresentation {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.clone(),
            relations: rels,
        }
    }
}

/// A graded submodule of a twisted free module over R, with a cached
/// Groebner basis (computed over P with the defining ideal adjoined).
#[derive(Debug, Clone)]
pub struct Submodule {
    ring: Ring,
    twists: Vec<i64>,
    gens: Vec<ModVec>,
    gb: OnceLock<Vec<ModVec>>,
}

impl Submodule {
    pub fn new(ring: Ring, twists: Vec<i64>, gens: Vec<ModVec>) -> Self {
        let gens = gens
            .into_iter()
            .map(|g| ring.nf_vec(&g))
            .filter(|g| !g.is_zero())
            .collect();
        Submodule {
            ring,
            twists,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: Ring, twists: Vec<i64>) -> Self {
        Submodule::new(ring, twists, vec![])
    }

    /// The full free module.
    pub fn full(ring: Ring, twists: Vec<i64>) -> Self {
        let f = ring.field();
        let nv = ring.nvars();
        let gens = (0..twists.len())
            .map(|i| ModVec::basis_vector(f, nv, twists.len(), i))
            .collect();
        Submodule::new(ring, twists, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn ambient_rank(&self) -> usize {
        self.twists.len()
    }

    pub fn gens(&self) -> &[ModVec] {
        &self.gens
    }

    /// Generators together with the defining ideal times the free basis;
    /// this is the lift of the submodule to P.
    pub fn lifted_gens(&self) -> Vec<ModVec> {
        let mut all = self.gens.clone();
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let rank = self.ambient_rank();
        for g in self.ring.ideal_gb() {
            let p = g.comp(0).clone();
            for i in 0..rank {
                let mut comps: Vec<Poly> = ModVec::zero(f, nv, rank).comps().to_vec();
                comps[i] = p.clone();
                all.push(ModVec::new(comps));
            }
        }
        all
    }

    /// Reduced Groebner basis over P of the lifted submodule; cached.
    pub fn gb(&self) -> &[ModVec] {
        self.gb.get_or_init(|| {
            groebner_basis(
                self.ring.field(),
                self.ring.nvars(),
                self.ambient_rank(),
                &self.lifted_gens(),
            )
        })
    }

    /// The Groebner-reduced generators as a new submodule (idempotent).
    pub fn reduced(&self) -> Submodule {
        let gb = self.gb().to_vec();
        // Keep only elements not in the ideal part (nonzero mod I).
        let gens: Vec<ModVec> = gb
            .iter()
            .map(|g| self.ring.nf_vec(g))
            .filter(|g| !g.is_zero())
            .collect();
        let s = Submodule {
            ring: self.ring.clone(),
            twists: self.twists.clone(),
            gens,
            gb: OnceLock::new(),
        };
        let _ = s.gb.set(gb);
        s
    }

    pub fn normal_form(&self, v: &ModVec) -> Result<ModVec> {
        if v.rank() != self.ambient_rank() {
            return Err(Error::AmbientMismatch(v.rank(), self.ambient_rank()));
        }
        Ok(normal_form(v, self.gb()))
    }

    pub fn contains(&self, v: &ModVec) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }

    /// Intersection with another submodule of the same ambient module.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient_rank() != other.ambient_rank() {
            return Err(Error::AmbientMismatch(
                self.ambient_rank(),
                other.ambient_rank(),
            ));
        }
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let rank = self.ambient_rank();
        let a = self.lifted_gens();
        let b = other.lifted_gens();
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        let syz = crate::groebner::syzygies_over_p(f, nv, rank, &all);
        let mut gens = Vec::new();
        for s in syz {
            let mut acc = ModVec::zero(f, nv, rank);
            for (i, g) in a.iter().enumerate() {
                acc = acc.add(&g.mul_poly(s.comp(i))?)?;
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
        Ok(Submodule::new(self.ring.clone(), self.twists.clone(), gens))
    }

    /// Colon submodule {v in F : x v in U}, as a submodule of the same
    /// ambient. For x = 0 this is the whole free module.
    pub fn colon(&self, x: &Poly) -> Result<Submodule> {
        let x = self.ring.nf(x);
        if x.is_zero() {
            return Ok(Submodule::full(self.ring.clone(), self.twists.clone()));
        }
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let rank = self.ambient_rank();
        let u = self.lifted_gens();
        let t = u.len();
        let mut all = u;
        for i in 0..rank {
            let mut comps: Vec<Poly> = ModVec::zero(f, nv, rank).comps().to_vec();
            comps[i] = x.clone();
            all.push(ModVec::new(comps));
        }
        let syz = crate::groebner::syzygies_over_p(f, nv, rank, &all);
        let gens: Vec<ModVec> = syz
            .into_iter()
            .map(|s| s.slice(t..t + rank))
            .filter(|v| !v.is_zero())
            .collect();
        Ok(Submodule::new(self.ring.clone(), self.twists.clone(), gens))
    }

    /// Minimal homogeneous generating set: greedy by degree with exact
    /// membership tests against the previously kept generators.
    pub fn minimal_gens(&self) -> Vec<ModVec> {
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let rank = self.ambient_rank();
        let mut st = GbState::new(f, nv, rank);
        for g in Submodule::zero(self.ring.clone(), self.twists.clone()).lifted_gens() {
            st.add_and_saturate(&g);
        }
        let mut gens: Vec<(i64, usize, ModVec)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let d = g
                    .homogeneous_degree(&self.twists)
                    .expect("generators are homogeneous");
                (d, i, g.clone())
            })
            .collect();
        gens.sort_by_key(|(d, i, _)| (*d, *i));
        let mut kept = Vec::new();
        for (_, _, g) in gens {
            let nf = st.reduce(&g);
            if nf.is_zero() {
                continue;
            }
            let (_, _, lc) = nf.leading().unwrap();
            let monic = nf.scale(f.inv(lc));
            st.add_and_saturate(&monic);
            kept.push(monic);
        }
        kept
    }

    /// Syzygies over R of the given generator list: all coefficient vectors
    /// (c_i) with sum c_i g_i = 0 in the ambient module over R.
    pub fn syzygies_of_gens(&self, gens: &[ModVec]) -> Vec<ModVec> {
        let f = self.ring.field();
        let nv = self.ring.nvars();
        let rank = self.ambient_rank();
        let t = gens.len();
        if t == 0 {
            return Vec::new();
        }
        let mut all = gens.to_vec();
        let ideal_part = Submodule::zero(self.ring.clone(), self.twists.clone()).lifted_gens();
        all.extend(ideal_part.iter().cloned());
        let syz = crate::groebner::syzygies_over_p(f, nv, rank, &all);
        syz.into_iter()
            .map(|s| self.ring.nf_vec(&s.slice(0..t)))
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Presentation of this submodule as an abstract module: free on the
    /// minimal generators, relations their syzygies over R.
    pub fn presentation(&self) -> ModulePresentation {
        let gens = self.minimal_gens();
        if gens.is_empty() {
            return ModulePresentation::zero(&self.ring);
        }
        let degs: Vec<i64> = gens
            .iter()
            .map(|g| g.homogeneous_degree(&self.twists).expect("homogeneous"))
            .collect();
        let rels = self.syzygies_of_gens(&gens);
        ModulePresentation {
            ring: self.ring.clone(),
            gen_degs: degs,
            relations: rels,
        }
    }
}

/// Kernel of a homogeneous map between twisted free modules over R, given by
/// its columns (images of the domain basis vectors inside the codomain).
pub fn kernel_of_map(
    ring: &Ring,
    domain_twists: &[i64],
    codomain_twists: &[i64],
    columns: &[ModVec],
) -> Result<Submodule> {
    if columns.len() != domain_twists.len() {
        return Err(Error::AmbientMismatch(columns.len(), domain_twists.len()));
    }
    for (j, c) in columns.iter().enumerate() {
        if c.rank() != codomain_twists.len() {
            return Err(Error::AmbientMismatch(c.rank(), codomain_twists.len()));
        }
        if !c.is_homogeneous(codomain_twists) {
            return Err(Error::NotHomogeneous(format!("column {}", j)));
        }
        if let Some(d) = c.homogeneous_degree(codomain_twists) {
            if d != domain_twists[j] {
                return Err(Error::DegreeMismatch(0, j, d, domain_twists[j]));
            }
        }
    }
    let codomain = Submodule::zero(ring.clone(), codomain_twists.to_vec());
    let t = columns.len();
    let f = ring.field();
    let nv = ring.nvars();
    let mut all: Vec<ModVec> = columns.to_vec();
    all.extend(codomain.lifted_gens());
    let syz = crate::groebner::syzygies_over_p(f, nv, codomain_twists.len(), &all);
    let gens: Vec<ModVec> = syz
        .into_iter()
        .map(|s| ring.nf_vec(&s.slice(0..t)))
        .filter(|v| !v.is_zero())
        .collect();
    Ok(Submodule::new(ring.clone(), domain_twists.to_vec(), gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn pxy() -> Ring {
        Ring::new(f(), vec!["x".into(), "y".into()], vec![]).unwrap()
    }

    /// R = F_p[x,y]/(x^2)
    fn rx2() -> Ring {
        let x = Poly::var(f(), 2, 0);
        let x2 = x.mul(&x).unwrap();
        Ring::new(f(), vec!["x".into(), "y".into()], vec![x2]).unwrap()
    }

    #[test]
    fn rejects_inhomogeneous_and_low_degree_relations() {
        let x = Poly::var(f(), 2, 0);
        let x2 = x.mul(&x).unwrap();
        let bad = x2.add(&Poly::var(f(), 2, 1)).unwrap();
        assert!(Ring::new(f(), vec!["x".into(), "y".into()], vec![bad]).is_err());
        assert!(Ring::new(f(), vec!["x".into(), "y".into()], vec![x]).is_err());
    }

    #[test]
    fn std_monomials_of_quotient() {
        let r = rx2();
        assert_eq!(r.std_monomials(0).len(), 1);
        assert_eq!(r.std_monomials(1).len(), 2);
        // degree >= 1: only y^d and x y^(d-1)
        for d in 2..6 {
            assert_eq!(r.std_monomials(d).len(), 2);
        }
    }

    #[test]
    fn power_submodule_examples() {
        // m^1 of F_p[x,y] = (x, y)
        let r = pxy();
        let m = ModulePresentation::ring_module(&r);
        let m1 = m.power_in_cover(1);
        assert_eq!(m1.gens().len(), 2);
        // m^3 of F_p[x,y]: 4 generators
        let m3 = m.power_in_cover(3);
        assert_eq!(m3.minimal_gens().len(), 4);
        // m^2 of F_p[x,y]/(x^2) = (xy, y^2)
        let rq = rx2();
        let mq = ModulePresentation::ring_module(&rq);
        let m2 = mq.power_in_cover(2);
        assert_eq!(m2.minimal_gens().len(), 2);
    }

    #[test]
    fn colon_of_powers_is_previous_power() {
        // In F_p[x,y]: (m^{n+1} : x) = m^n for n = 0..4.
        let r = pxy();
        let x = Poly::var(f(), 2, 0);
        let m = ModulePresentation::ring_module(&r);
        for n in 0..5u32 {
            let mn1 = m.power_in_cover(n + 1);
            let mn = m.power_in_cover(n);
            let colon = mn1.colon(&x).unwrap();
            assert!(colon.equals(&mn).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn colon_by_unit_is_identity() {
        let r = pxy();
        let m = ModulePresentation::ring_module(&r);
        let u = m.power_in_cover(2);
        let one = Poly::one(f(), 2);
        assert!(u.colon(&one).unwrap().equals(&u).unwrap());
    }

    #[test]
    fn colon_in_quotient_ring() {
        // In R = F_p[x,y]/(x^2): (m^2 : x) = m.
        let r = rx2();
        let m = ModulePresentation::ring_module(&r);
        let m2 = m.power_in_cover(2);
        let m1 = m.power_in_cover(1);
        let x = Poly::var(f(), 2, 0);
        let colon = m2.colon(&x).unwrap();
        assert!(colon.equals(&m1).unwrap());
        // 1 is excluded: the colon is not the whole ring.
        let full = Submodule::full(r.clone(), vec![0]);
        assert!(!colon.equals(&full).unwrap());
    }

    #[test]
    fn syzygy_over_quotient_is_annihilator() {
        // Over R = F_p[x]/(x^2), syzygies of (x) are generated by (x).
        let x = Poly::var(f(), 1, 0);
        let x2 = x.mul(&x).unwrap();
        let r = Ring::new(f(), vec!["x".into()], vec![x2]).unwrap();
        let sub = Submodule::new(r.clone(), vec![0], vec![ModVec::from_poly(x.clone())]);
        let syz = sub.syzygies_of_gens(&[ModVec::from_poly(x.clone())]);
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].comp(0), &x);
    }

    #[test]
    fn kernel_examples() {
        // kernel of (x y): R(-1)^2 -> R over F_p[x,y] is the Koszul syzygy.
        let r = pxy();
        let x = Poly::var(f(), 2, 0);
        let y = Poly::var(f(), 2, 1);
        let cols = vec![ModVec::from_poly(x.clone()), ModVec::from_poly(y.clone())];
        let ker = kernel_of_map(&r, &[1, 1], &[0], &cols).unwrap();
        let gens = ker.minimal_gens();
        assert_eq!(gens.len(), 1);
        let g = &gens[0];
        let combo = g.comp(0).mul(&x).unwrap().add(&g.comp(1).mul(&y).unwrap()).unwrap();
        assert!(combo.is_zero());

        // kernel of the zero map is the full domain.
        let zero_col = vec![ModVec::zero(f(), 2, 1)];
        let ker0 = kernel_of_map(&r, &[0], &[0], &zero_col).unwrap();
        assert!(ker0
            .equals(&Submodule::full(r.clone(), vec![0]))
            .unwrap());

        // kernel of multiplication by x on R = F_p[x]/(x^2) is (x).
        let x1 = Poly::var(f(), 1, 0);
        let x2 = x1.mul(&x1).unwrap();
        let rq = Ring::new(f(), vec!["x".into()], vec![x2]).unwrap();
        let kerx = kernel_of_map(&rq, &[1], &[0], &[ModVec::from_poly(x1.clone())]).unwrap();
        let expect = Submodule::new(rq.clone(), vec![1], vec![ModVec::from_poly(x1)]);
        assert!(kerx.equals(&expect).unwrap());
    }

    #[test]
    fn minimal_gens_prunes_redundant() {
        let r = pxy();
        let x = Poly::var(f(), 2, 0);
        let y = Poly::var(f(), 2, 1);
        let xy = x.mul(&y).unwrap();
        let sub = Submodule::new(
            r,
            vec![0],
            vec![
                ModVec::from_poly(x.clone()),
                ModVec::from_poly(xy),
                ModVec::from_poly(y.clone()),
            ],
        );
        assert_eq!(sub.minimal_gens().len(), 2);
    }
}
