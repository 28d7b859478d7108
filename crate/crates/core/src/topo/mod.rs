//! Poset topology: order complexes, integral homology through Smith normal
//! forms, contraction certificates and Quillen fiber checks.

mod cert;
mod complex;
mod homology;
mod poset;
mod snf;

pub use cert::{
    check_certificate, check_fiber_minima, conical_certificate, find_certificate,
    homology_check_limit, maximum_certificate, minimum_certificate, quillen_fiber_check,
    set_homology_check_limit, Certificate, CertificateKind, ConicalProvider, FiberCertificate,
    FiberEntry, FiberMinimum, FiberMinimumReport, FiberMode, FiberReport, Violation,
    HOMOLOGY_CHECK_LIMIT,
};
pub use complex::{order_complex, order_complex_bounded, SimplicialComplex};
pub use homology::{homology, Homology, HomologyGroup};
pub use poset::{equivariance_check, Poset};
pub use snf::{invariant_factors, smith_decomposition, IntMatrix, SmithDecomposition};

/// Reduced homology of the order complex.
pub fn poset_homology(p: &Poset) -> crate::Result<Homology> {
    homology(&order_complex(p), true)
}

#[cfg(test)]
mod tests;
