//! Localization of a map of mixed complexes after Koszul duality.

use num_traits::Zero;

use super::{koszul_t, EquivariantError, GradedModule, MixedComplex};
use crate::kernel::{Poly, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationVerdict {
    pub iso_after_localization: bool,
    /// H(t(cone ι)), which measures kernel and cokernel of H(t(ι))
    pub cone_cohomology: GradedModule,
    /// u^e killing the cone cohomology, when it is torsion
    pub annihilator: Option<Poly>,
}

fn check_commutes(
    z: &MixedComplex,
    x: &MixedComplex,
    iota: &SparseMatrix,
    left: &SparseMatrix,
    right: &SparseMatrix,
    op: &str,
) -> Result<(), EquivariantError> {
    let a = iota.mul(right)?;
    let b = left.mul(iota)?;
    for j in 0..z.len() {
        for i in 0..x.len() {
            if a.get(i, j) != b.get(i, j) {
                return Err(EquivariantError::Relation {
                    relation: format!("ι {op} = {op} ι"),
                    witness: format!("{} -> {}", z.names[j], x.names[i]),
                });
            }
        }
    }
    Ok(())
}

/// The mapping cone Z[1] ⊕ X with d(z, x) = (−dz, ιz + dx) and
/// h(z, x) = (−hz, hx).
pub fn cone(
    z: &MixedComplex,
    x: &MixedComplex,
    iota: &SparseMatrix,
) -> Result<MixedComplex, EquivariantError> {
    if iota.nrows() != x.len() || iota.ncols() != z.len() {
        return Err(EquivariantError::Invalid(format!(
            "the map must be {}x{}, got {}x{}",
            x.len(),
            z.len(),
            iota.nrows(),
            iota.ncols()
        )));
    }
    if z.rank() != x.rank() {
        return Err(EquivariantError::Invalid(
            "source and target have different torus ranks".into(),
        ));
    }
    for (i, j, _) in iota.entries() {
        if x.degrees[i] != z.degrees[j] {
            return Err(EquivariantError::Degree {
                op: "ι".into(),
                from: z.names[j].clone(),
                to: x.names[i].clone(),
                from_degree: z.degrees[j],
                to_degree: x.degrees[i],
            });
        }
    }
    check_commutes(z, x, iota, &x.d, &z.d, "d")?;
    for (i, (hz, hx)) in z.h.iter().zip(&x.h).enumerate() {
        check_commutes(z, x, iota, hx, hz, &format!("h{}", i + 1))?;
    }
    let nz = z.len();
    let n = nz + x.len();
    let ring = crate::kernel::Ring::Q;
    let mut d = SparseMatrix::zeros(ring.clone(), n, n);
    d.put_block(0, 0, &z.d.map_entries(ring.clone(), |p| -p.clone()));
    d.put_block(nz, 0, iota);
    d.put_block(nz, nz, &x.d);
    let h =
        z.h.iter()
            .zip(&x.h)
            .map(|(hz, hx)| {
                let mut m = SparseMatrix::zeros(ring.clone(), n, n);
                m.put_block(0, 0, &hz.map_entries(ring.clone(), |p| -p.clone()));
                m.put_block(nz, nz, hx);
                m
            })
            .collect();
    let names = z
        .names
        .iter()
        .map(|s| format!("{s}[1]"))
        .chain(x.names.iter().cloned())
        .collect();
    let degrees = z
        .degrees
        .iter()
        .map(|d| d - 1)
        .chain(x.degrees.iter().copied())
        .collect();
    MixedComplex::new(names, degrees, d, h)
}

/// Whether H(t(ι)) becomes an isomorphism after inverting every f in
/// `inverted` (polynomials in u).
pub fn localize_check(
    z: &MixedComplex,
    x: &MixedComplex,
    iota: &SparseMatrix,
    inverted: &[Poly],
) -> Result<LocalizationVerdict, EquivariantError> {
    let c = cone(z, x, iota)?;
    if c.rank() != 1 {
        return Err(EquivariantError::MultiVariable(c.rank()));
    }
    let module = koszul_t(&c)?.module()?;
    let product = inverted.iter().fold(Poly::one(), |a, f| &a * f);
    let u_inverted = !product.is_zero() && product.constant_term().is_zero();
    let iso = module.is_torsion() && (module.torsion.is_empty() || u_inverted);
    Ok(LocalizationVerdict {
        iso_after_localization: iso,
        annihilator: module.annihilator(),
        cone_cohomology: module,
    })
}
