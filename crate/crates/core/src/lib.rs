//! Exact computation of centers of path algebras, Cohn path algebras and
//! Leavitt path algebras of finite directed graphs.

pub mod algebra;
pub mod center;
pub mod field;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
