// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Edge-colouring toolkit for hypergraphs with bounded codegree.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypercore`]: the [`Hypergraph`] type, degrees, volumes, duals, line
//!   graphs, neighbourhoods, colouring validation and canonical forms.
//! * [`format`]: the `.hg` text format.
//! * [`generators`]: projective planes, near-pencils, t-fold copies, clique
//!   families and seeded random instances.
//! * [`ordering`]: forward degrees, the reordering local search, the two
//!   partition scripts with recomputable certificates, greedy list colouring.
//! * [`extremal`]: useful pairs, complement matchings and the ladder that
//!   colours hypergraphs whose edges all have size close to `√n`.
//! * [`oracle`]: exact chromatic index, list colourability, maximum
//!   complement matchings and exhaustive enumeration at small scale.
//! * [`characterize`]: the intersecting bound `e(H) ≤ t·max|N[v]|` and the
//!   classification of its equality cases.
//! * [`pipeline`]: the size split, colour reservation and the two end-to-end
//!   colouring ladders.
//! * [`verify`]: an independent recheck of invariants on a single instance.
//!
//! Every inequality is decided in exact rational arithmetic.

pub mod characterize;
pub mod error;
pub mod extremal;
pub mod format;
pub mod generators;
pub mod hypercore;
pub mod oracle;
pub mod ordering;
pub mod pipeline;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use hypercore::{EdgeColouring, Hypergraph, ListAssignment};
pub use rational::Rational;
