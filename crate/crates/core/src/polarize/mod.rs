//! Product polarization: linear pencils `A(z)` with
//! `q(ζ)P(z) = Ψ(ζ) A(z) Ψ(z)ᵀ`.

mod basis;
mod pencil;
mod product;
mod psd_slot;
mod transfer;

pub use basis::MonomialBasis;
pub use pencil::Pencil;
pub use product::{
    check_product_identity, check_wronskian_identity, coefficient_vector, gauge_difference_check, polarize_product,
    polarize_product_with, product_caps, Polarization,
};
pub use psd_slot::{polarize_with_psd_slot, polarize_with_psd_slot_opts, PsdSlotPolarization};
pub use transfer::{transfer_entries, transfer_pencil, transfer_pencil_with, ChainOrder, TransferEntry};
