//! Serialization of wide integers as decimal strings.

use std::fmt::Display;

use serde::Serializer;

pub fn serialize<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
