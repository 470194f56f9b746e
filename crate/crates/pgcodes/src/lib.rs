//! Incidence codes of points and k-spaces of PG(n,q) over F_p, their duals,
//! sets of even type, and exhaustive desk-scale classification searches.

pub mod codes;
pub mod evensets;
pub mod gf;
pub mod projgeom;
