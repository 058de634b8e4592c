//! Sum-of-squares certification through a positive semidefinite Gram matrix.

mod certificate;
mod facial;
mod search;
mod space;

pub use certificate::{certificate_is_exact, factor_certificate, SosCertificate};
pub use search::{find_psd_gram, find_psd_gram_with, FeasibilityReport, FeasibilityStatus, SosOptions};
pub use space::build_gram_space;

use crate::error::Result;
use crate::gram::GramSpace;
use crate::polycore::MatrixForm;

/// Builds the Gram space of `f` and searches it.
pub fn certify(f: &MatrixForm, caps: Option<&[u32]>, opts: &SosOptions) -> Result<(GramSpace, FeasibilityReport)> {
    let space = build_gram_space(f, caps)?;
    let report = find_psd_gram_with(&space, opts);
    Ok((space, report))
}
