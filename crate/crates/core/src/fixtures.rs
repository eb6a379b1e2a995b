//! The four fixture posets shipped with the crate.
//!
//! - `chain3`: `x < y < z`
//! - `vee`: `m < a`, `m < b`
//! - `circ4`: `p, q < A, B`, a four-point model of the circle
//! - `diamond`: `bot < a, b < top`

use crate::io::parse_poset;
use crate::poset::Poset;

pub const CHAIN3: &str = include_str!("../fixtures/chain3.poset");
pub const VEE: &str = include_str!("../fixtures/vee.poset");
pub const CIRC4: &str = include_str!("../fixtures/circ4.poset");
pub const DIAMOND: &str = include_str!("../fixtures/diamond.poset");

fn load(text: &str) -> Poset {
    parse_poset(text).expect("fixture posets parse")
}

pub fn chain3() -> Poset {
    load(CHAIN3)
}

pub fn vee() -> Poset {
    load(VEE)
}

pub fn circ4() -> Poset {
    load(CIRC4)
}

pub fn diamond() -> Poset {
    load(DIAMOND)
}

/// Looks a fixture up by name; a `.dual` suffix selects the opposite poset.
pub fn by_name(name: &str) -> Option<Poset> {
    if let Some(base) = name.strip_suffix(".dual") {
        return by_name(base).map(|p| p.dual());
    }
    match name {
        "chain3" => Some(chain3()),
        "vee" => Some(vee()),
        "circ4" => Some(circ4()),
        "diamond" => Some(diamond()),
        _ => None,
    }
}

/// All fixtures in a fixed order.
pub fn all() -> Vec<Poset> {
    vec![chain3(), vee(), circ4(), diamond()]
}
