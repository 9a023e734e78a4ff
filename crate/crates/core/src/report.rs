//! Serialization helpers: exact rationals render as "p/q" strings.

use serde::Serializer;

use crate::qpoly::poly::rat_to_string;
use crate::qpoly::Rat;

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

pub fn ser_rats<S: Serializer>(rs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(rat_to_string))
}

pub fn ser_opt_rat<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rat_to_string(r)),
        None => s.serialize_none(),
    }
}

pub fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_displays<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_opt_display<T: std::fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
