//! Builders for the example families: trivial extensions (idealizations)
//! S |x L, the non-Cohen-Macaulay family built from them, and hypersurface
//! rings P/(f). Every constructed object is certified by an exact identity
//! (Hilbert series for idealizations, multiplicity for hypersurfaces).

use crate::degreewise::hs_value;
use crate::error::{Error, Result};
use crate::invariants::{hilbert_series, HilbertSeries};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::resolution::{minimal_presentation, module_invariants};
use crate::ring::{ModulePresentation, Ring};

/// The idealization R = S |x L with its structural data. L sits in internal
/// degree shifted by 1 (the new variables y_j have degree 1), keeping R
/// standard graded; then m_R^k = n^k + n^{k-1} L degreewise.
#[derive(Debug, Clone)]
pub struct TrivialExtension {
    pub base: Ring,
    pub module: ModulePresentation,
    pub ring: Ring,
    /// Names of the adjoined degree-1 variables, one per generator of L.
    pub new_vars: Vec<String>,
    /// S as an R-module: R / (y_1, ..., y_t).
    pub s_module: ModulePresentation,
}

/// Pad a polynomial over S to the ambient of R (extra variables, exponent 0).
fn lift_poly(p: &Poly, total_vars: usize) -> Poly {
    let terms: Vec<(Monomial, i64)> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.resize(total_vars, 0);
            (Monomial::new(exps), *c as i64)
        })
        .collect();
    Poly::from_terms(p.field(), total_vars, terms)
}

/// Multiply integer polynomials (coefficient vectors, ascending).
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Numerator of a Hilbert series rewritten over (1-z)^target, including the
/// z^offset shift: z^offset * num * (1-z)^(target - dim).
fn common_numerator(h: &HilbertSeries, target: usize, extra_shift: usize) -> Vec<i64> {
    let mut num = h.numerator.clone();
    for _ in h.dim..target {
        num = poly_mul(&num, &[1, -1]);
    }
    let shift = h.offset.max(0) as usize + extra_shift;
    let mut out = vec![0i64; shift];
    out.extend(num);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Exact check of Hilb_R(z) = Hilb_S(z) + z * Hilb_L(z) as rational
/// functions.
fn hilbert_identity_holds(
    r: &HilbertSeries,
    s: &HilbertSeries,
    l: Option<&HilbertSeries>,
) -> bool {
    let target = r
        .dim
        .max(s.dim)
        .max(l.map(|h| h.dim).unwrap_or(0));
    let lhs = common_numerator(r, target, 0);
    let mut rhs = common_numerator(s, target, 0);
    if let Some(l) = l {
        let lz = common_numerator(l, target, 1);
        if rhs.len() < lz.len() {
            rhs.resize(lz.len(), 0);
        }
        for (i, c) in lz.iter().enumerate() {
            rhs[i] += c;
        }
        while rhs.last() == Some(&0) {
            rhs.pop();
        }
    }
    lhs == rhs
}

/// Fresh names for the adjoined variables, avoiding clashes with S.
fn fresh_names(base_names: &[String], t: usize) -> Vec<String> {
    let mut stem = "y".to_string();
    loop {
        let candidates: Vec<String> = if t == 1 {
            vec![stem.clone()]
        } else {
            (1..=t).map(|i| format!("{}{}", stem, i)).collect()
        };
        if candidates.iter().all(|c| !base_names.contains(c)) {
            return candidates;
        }
        stem.push('y');
    }
}

/// Build R = S |x L for L generated in degree 0 over S. The result is
/// P_S[y_1..y_t] / (I_S + (y_i y_j) + (relations of L applied to the y's)),
/// certified by the Hilbert-series identity Hilb_R = Hilb_S + z Hilb_L.
pub fn trivial_extension(s: &Ring, l: &ModulePresentation) -> Result<TrivialExtension> {
    if l.ring() != s {
        return Err(Error::RingMismatch);
    }
    let lmin = minimal_presentation(l);
    if lmin.gen_degs().iter().any(|d| *d != 0) {
        return Err(Error::Construction(
            "idealization requires L generated in degree 0".into(),
        ));
    }
    let t = lmin.rank();
    let f = s.field();
    let ns = s.nvars();
    let nv = ns + t;
    let new_vars = fresh_names(s.var_names(), t);
    let mut names = s.var_names().to_vec();
    names.extend(new_vars.iter().cloned());
    let mut rels: Vec<Poly> = s.relations().iter().map(|p| lift_poly(p, nv)).collect();
    for i in 0..t {
        for j in i..t {
            let yi = Poly::var(f, nv, ns + i);
            let yj = Poly::var(f, nv, ns + j);
            rels.push(yi.mul(&yj)?);
        }
    }
    for col in lmin.relations() {
        let mut acc = Poly::zero(f, nv);
        for (lidx, entry) in col.comps().iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let y = Poly::var(f, nv, ns + lidx);
            acc = acc.add(&lift_poly(entry, nv).mul(&y)?)?;
        }
        if !acc.is_zero() {
            rels.push(acc);
        }
    }
    let ring = Ring::new(f, names, rels)?;
    let y_gens: Vec<Poly> = (0..t).map(|i| Poly::var(f, nv, ns + i)).collect();
    let s_module = ModulePresentation::cyclic(&ring, y_gens)?;
    let ext = TrivialExtension {
        base: s.clone(),
        module: lmin,
        ring,
        new_vars,
        s_module,
    };
    // Certification.
    let hr = hilbert_series(&ModulePresentation::ring_module(&ext.ring))?;
    let hs = hilbert_series(&ModulePresentation::ring_module(s))?;
    let hl = if t == 0 {
        None
    } else {
        Some(hilbert_series(&ext.module)?)
    };
    if !hilbert_identity_holds(&hr, &hs, hl.as_ref()) {
        return Err(Error::Construction(
            "Hilbert series identity Hilb_R = Hilb_S + z Hilb_L failed".into(),
        ));
    }
    Ok(ext)
}

/// The non-Cohen-Macaulay family: S = F_p[x_1..x_q], L = S/(x_{p+2}..x_q),
/// R = S |x L, and M = S as an R-module. Guarantees depth R = p + 1,
/// dim R = q, and M maximal Cohen-Macaulay over R; all three are verified.
pub fn noncm_example(p: usize, q: usize, field: crate::field::FieldSpec) -> Result<(TrivialExtension, ModulePresentation)> {
    if q == 0 || p + 1 > q {
        return Err(Error::Construction(format!(
            "need 0 <= p <= q - 1, got p = {}, q = {}",
            p, q
        )));
    }
    let names: Vec<String> = (1..=q).map(|i| format!("x{}", i)).collect();
    let s = Ring::new(field, names, vec![])?;
    let killed: Vec<Poly> = (p + 1..q).map(|i| Poly::var(field, q, i)).collect();
    let l = ModulePresentation::cyclic(&s, killed)?;
    let ext = trivial_extension(&s, &l)?;
    let m = ext.s_module.clone();
    // Verify the Proposition's numbers.
    let rinv = ext.ring.invariants();
    if rinv.depth != p + 1 || rinv.dim != q {
        return Err(Error::Construction(format!(
            "expected depth {} and dim {}, got depth {} and dim {}",
            p + 1,
            q,
            rinv.depth,
            rinv.dim
        )));
    }
    let minv = module_invariants(&m)?;
    if minv.depth != rinv.dim {
        return Err(Error::Construction(format!(
            "structural module is not maximal Cohen-Macaulay: depth {} vs dim R {}",
            minv.depth, rinv.dim
        )));
    }
    Ok((ext, m))
}

/// Paired table for the idealization identity
/// ell_R Tor_1(S, R/m^{n+1}) = rank_k(n^n L / n^{n+1} L), n = 0..=n_max.
pub fn tor1_identity_check(ext: &TrivialExtension, n_max: u32) -> Result<Vec<(u64, u64)>> {
    use crate::homology::{tor_table, TorFamily};
    let table = tor_table(
        &ext.s_module,
        &TorFamily::QuotientPowers(ModulePresentation::ring_module(&ext.ring)),
        &[1],
        n_max,
    )?;
    let lhs = table.row(1).expect("row for i = 1");
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let rhs = if ext.module.rank() == 0 {
            0
        } else if n == 0 {
            hs_value(&ext.module, 0)
        } else {
            hs_value(&ext.module, n) - hs_value(&ext.module, n - 1)
        };
        out.push((lhs[n as usize], rhs));
    }
    Ok(out)
}

/// The hypersurface R = P/(f), with multiplicity e(R) = deg f certified and
/// the Gorenstein flag set (complete intersections are Gorenstein).
pub fn hypersurface(ambient: &Ring, f: &Poly) -> Result<(Ring, u32)> {
    if !ambient.is_polynomial_ring() {
        return Err(Error::Construction(
            "hypersurfaces are cut out of a polynomial ring".into(),
        ));
    }
    let e = match f.homogeneous_degree() {
        Some(e) if e >= 2 && !f.is_zero() => e,
        _ => {
            return Err(Error::Construction(
                "hypersurface equation must be homogeneous of degree >= 2".into(),
            ))
        }
    };
    let ring = Ring::new(
        ambient.field(),
        ambient.var_names().to_vec(),
        vec![f.clone()],
    )?
    .with_gorenstein_hint();
    if ring.multiplicity() != e as i64 {
        return Err(Error::Construction(format!(
            "multiplicity {} does not match deg f = {}",
            ring.multiplicity(),
            e
        )));
    }
    Ok((ring, e))
}

/// The section-2 dictum: R = S |x L is Cohen-Macaulay iff S is
/// Cohen-Macaulay and L is maximal Cohen-Macaulay over S (vacuously when
/// L = 0, where R = S). Returns (lhs, rhs) of the equivalence.
pub fn cm_dictum_sides(ext: &TrivialExtension) -> Result<(bool, bool)> {
    let lhs = ext.ring.is_cohen_macaulay();
    let s_cm = ext.base.is_cohen_macaulay();
    let rhs = if ext.module.rank() == 0 {
        s_cm
    } else {
        let linv = module_invariants(&ext.module)?;
        s_cm && linv.depth == ext.base.dim()
    };
    Ok((lhs, rhs))
}

/// dim_R S = dim S and depth_R S = depth S for the structural module.
pub fn structural_module_consistent(ext: &TrivialExtension) -> Result<bool> {
    let minv = module_invariants(&ext.s_module)?;
    Ok(minv.dim == ext.base.dim() && minv.depth == ext.base.depth())
}
