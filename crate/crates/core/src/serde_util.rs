use serde::Serializer;

use crate::graph::VertexSet;

pub fn set_as_list<S: Serializer>(set: &VertexSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(set.iter())
}
