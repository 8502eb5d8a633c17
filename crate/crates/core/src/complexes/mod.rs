//! Bounded pieces of the infinite complexes attached to an FC-type Artin group.

pub mod deligne;
pub mod cp;
pub mod growth;
