//! Finite computations behind the classification of r-isogenies over
//! Q(ζ_r) for elliptic curves with rational j-invariant: subgroups of
//! GL₂(F_r) and their actions, exact rational curve arithmetic, cyclotomic
//! square classes, and reduction-based torsion bounds.

pub mod cyclo;
pub mod gatefinder;
pub mod linaction;
pub mod matgroup;
pub mod modcurve;
pub mod modfield;
pub mod ratcurves;
pub mod stdgroups;
