pub mod cech;
pub mod commands;
pub mod io;
pub mod oracle;
pub mod verify;
