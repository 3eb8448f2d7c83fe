//! Promotion dynamics and exact orbit statistics for increasing labelings
//! of finite posets, with an emphasis on fences (zig-zag posets).
//!
//! The crate provides:
//!
//! * [`poset`] — finite posets from cover relations, fences, order ideals,
//!   rowmotion, and order-reversing involutions;
//! * [`labeling`] — increasing labelings, content words, deflation and
//!   inflation, reading words, pattern containment;
//! * [`dynamics`] — promotion and its inverse via jeu-de-taquin slides,
//!   sliding subposets, the swap map, orbit computation, orbit sizes via
//!   deflation, and symbolic orbit-size tables;
//! * [`mesy`] — statistics (antipodal sums, total sum, cardinality), exact
//!   rational orbit and global averages, orbitmesy and homomesy checks,
//!   sufficient-condition certificates, and the classification of
//!   four-element zig-zag orbits;
//! * [`cli`] — the `orbitmesy` command-line interface.
//!
//! All averages are exact rationals; nothing in the crate rounds.

pub mod cli;
pub mod dynamics;
mod error;
pub mod labeling;
pub mod mesy;
pub mod poset;

pub use error::{Error, Result};

/// Ready-made posets used by the verification battery and tests.
pub mod examples {
    use std::sync::Arc;

    use crate::poset::Poset;

    /// A ten-element self-dual poset of three ranks: minimal elements
    /// 0..=2, middle elements 3..=6, maximal elements 7..=9. The standard
    /// non-fence workout for the slide and swap machinery.
    pub fn ten_element_poset() -> Arc<Poset> {
        Arc::new(
            Poset::from_covers(
                10,
                &[
                    (0, 3),
                    (0, 5),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (1, 6),
                    (2, 4),
                    (2, 6),
                    (3, 7),
                    (3, 8),
                    (4, 7),
                    (4, 8),
                    (5, 8),
                    (5, 9),
                    (6, 8),
                    (6, 9),
                ],
            )
            .expect("example covers are acyclic and irreducible"),
        )
    }
}
