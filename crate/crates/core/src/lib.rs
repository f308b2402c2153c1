//! Exact construction, decomposition and classification of involutions of the
//! second kind on incidence algebras of finite connected posets.

pub mod algebra;
pub mod classify;
pub mod field;
pub mod involution;
pub mod io;
pub mod oracle;
pub mod poset;
