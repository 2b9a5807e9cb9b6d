#![allow(dead_code)]

pub mod kronecker;
