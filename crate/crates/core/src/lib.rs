pub mod field;
pub mod geom;
pub mod linalg;
pub mod weil;
pub mod brauer;
pub mod cert;
pub mod verify;
pub mod io;
