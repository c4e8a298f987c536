//! Maps from perfect codes to tilings, their inverses, and constructive
//! locators that name the tile covering a given point.

mod binary;
mod ternary;

pub use binary::{from_binary_perfect, locate_tile_binary, punctured_construction, to_binary_perfect};
pub use ternary::{
    from_ternary_perfect, locate_tile_ternary, phi, phi_word, psi, psi_word,
    reduce_to_representative, ClassTable, CLASS_REPRESENTATIVES,
};

use crate::codes::BlockCode;
use crate::error::{Error, Result};

fn require_perfect(c: &BlockCode, q: u8) -> Result<()> {
    if c.q() != q {
        return Err(Error::InvalidInput(format!(
            "expected a code over Z_{q}, got Z_{}",
            c.q()
        )));
    }
    let check = c.is_perfect();
    if !check.perfect {
        return Err(Error::NotPerfect(check.reason));
    }
    Ok(())
}
