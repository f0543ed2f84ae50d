//! Exact invariants of finite groups built from product-one sequences.
//!
//! A sequence over a finite group `G` is an unordered multiset of elements.
//! It is *product-one* if some ordering of its entries multiplies to the
//! identity, and an *atom* if it is product-one and cannot be split into two
//! nonempty product-one parts.  Three classical constants fall out of this:
//!
//! * the small Davenport constant `d(G)`: the longest sequence with no
//!   nonempty product-one sub-multiset,
//! * the large Davenport constant `D(G)`: the longest atom,
//! * the geodesic Davenport constant `GD(G)`: the longest *directed geodesic
//!   atom*, an atom witnessed by an element whose inverse lies at maximal
//!   word-length distance over the support of the rest of the sequence.
//!
//! Geodesic atoms tie sequence arithmetic to the directed Cayley graphs of
//! `G`: the diameter of `Cay(G, B)` for every generating set `B`, and the
//! worst case `ddiam(G)` over all generating sets, can be read off the
//! geodesic atom levels without touching the graphs themselves.
//!
//! The crate is organised around that pipeline:
//!
//! * [`group`]: multiplication-table groups, constructors, automorphisms,
//! * [`sequence`]: multiset sequences and the product-one predicates,
//! * [`cayley`]: word lengths, digraph diameters, generating-set search,
//! * [`atoms`]: level-wise atom enumeration, `d(G)` and `D(G)`,
//! * [`geodesic`]: geodesic atom levels, `GD(G)`, diameter bounds,
//! * [`oracle`]: definition-level brute-force checks for small groups.
//!
//! Enumeration is level-wise over orbit representatives under the
//! automorphism group, so the searches stay exact while the per-level state
//! stays small.  All results are deterministic regardless of thread count.

pub mod atoms;
pub mod cayley;
mod elems;
mod error;
pub mod geodesic;
pub mod group;
pub mod levels;
pub mod oracle;
pub mod sequence;

pub use elems::ElemSet;
pub use error::Error;
pub use group::{automorphisms, automorphisms_with_cap, Automorphisms, Group};
pub use levels::{LevelKind, LevelSets, SearchOptions};
pub use sequence::Sequence;

/// Engine version, as baked in at compile time.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest group order the element-set representation supports.
pub const MAX_ORDER: usize = 256;

/// Default cap on the group order for automorphism enumeration.
pub const DEFAULT_AUT_CAP: usize = 64;
