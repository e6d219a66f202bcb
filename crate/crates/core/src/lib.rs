//! Verification and enumeration toolkit for C_n lattices and ranked
//! symplectic matroids.
//!
//! The crate is organised bottom-up:
//!
//! * [`signed`] — the signed ground set `J = [n] ⊔ [n]*`, the star
//!   involution, admissible orders and the Gale order.
//! * [`lattice`] — inclusion-ordered set lattices, the geometric and C_n
//!   axiom checkers, interval restriction and order complexes.
//! * [`matroid`] — independence families, rank oracles and flats.
//! * [`nbb`] — bounded-below sets, NBB independence over atoms and the
//!   induced geometric lattice.
//! * [`symplectic`] — symplectic matroids, Chow's axioms, ground-set NBB
//!   independence and the lattice/matroid correspondence.
//! * [`spike`] — spikes with no tip as biased doubled cycles.
//! * [`shell`] — shellings and recursive atom orderings.
//! * [`workbench`] — fixtures, enumeration up to signed permutations and
//!   the property suite.
//!
//! With the default `parallel` feature the order-quantified searches run on
//! rayon; without it every routine falls back to plain iteration.

pub mod bits;
pub mod error;
pub mod io;
pub mod lattice;
pub mod matroid;
pub mod nbb;
mod par;
pub mod shell;
pub mod signed;
pub mod spike;
pub mod symplectic;
pub mod workbench;

pub use error::{Error, Result};
pub use lattice::{Ground, SetLattice};
pub use matroid::{IndependenceFamily, Matroid};
pub use signed::{AdmissibleOrder, Element, GroundOrder, SignedSet};

/// Caps the number of worker threads used by the parallel routines. Must be
/// called before any parallel work starts; without the `parallel` feature it
/// does nothing.
pub fn set_threads(threads: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Precondition(format!("cannot configure the thread pool: {e}")))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}
