//! Groups shipped with the crate, with their orders checked on load.

use crate::error::{Error, Result};
use crate::permcore::{GroupSpec, PermutationGroup};

pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub order: usize,
}

macro_rules! fixture {
    ($name:literal, $order:expr) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../../fixtures/", $name, ".grp")),
            order: $order,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("trivial", 1),
    fixture!("S3", 6),
    fixture!("S4", 24),
    fixture!("S5", 120),
    fixture!("S6", 720),
    fixture!("A4", 12),
    fixture!("A5", 60),
    fixture!("A6", 360),
    fixture!("D3", 6),
    fixture!("D5", 10),
    fixture!("D7", 14),
    fixture!("D11", 22),
    fixture!("M11", 7920),
    fixture!("M12", 95040),
];

pub fn find_fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name.eq_ignore_ascii_case(name))
}

/// Loads a shipped group and checks its enumerated order against the
/// expected value.
pub fn load_fixture(name: &str, cap: usize) -> Result<PermutationGroup> {
    let fixture = find_fixture(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture {name:?}")))?;
    let group = GroupSpec::parse(fixture.text)?.generate(cap)?;
    if group.order() != fixture.order {
        return Err(Error::Internal(format!(
            "fixture {} enumerates to order {} instead of {}",
            fixture.name,
            group.order(),
            fixture.order
        )));
    }
    Ok(group)
}
