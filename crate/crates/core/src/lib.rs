pub mod ballmap;
pub mod catalog;
pub mod classify;
pub mod exactnum;
pub mod induce;
pub mod numverify;
pub mod poly;
