use crate::error::{Error, Result};

/// Solvable test groups of order at most 48, as group specs.
pub const SOLVABLE_CATALOG: &[&str] = &[
    "Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(7)", "Z(8)", "Z(9)", "Z(10)", "Z(12)", "Z(15)",
    "Z(16)", "Z(24)",
    "Z(2)^2", "Z(2)^3", "Z(2)^4", "Z(3)^2", "Z(3)^3", "Z(2)*Z(4)", "Z(2)*Z(6)", "Z(4)^2",
    "D(6)", "D(8)", "D(10)", "D(12)", "D(14)", "D(16)", "D(18)", "D(20)", "D(24)", "D(32)",
    "D(48)",
    "Q(8)", "Dstar(12)", "Q(16)", "Dstar(20)", "Dstar(24)", "Q(32)", "Dstar(36)", "Dstar(48)",
    "A(4)", "S(4)", "M(7,3,2)", "M(5,4,2)", "M(7,6,3)", "M(3,8,2)",
    "Z(2)*S(3)", "Z(3)*S(3)", "Z(4)*S(3)", "S(3)*S(3)", "Z(2)*D(8)", "Z(2)*Q(8)", "Z(3)*D(8)",
    "Z(3)*Q(8)", "Z(2)*A(4)", "Z(2)*S(4)",
];

/// Nilpotent members of the catalog of order at most 32.
pub const NILPOTENT_CATALOG: &[&str] = &[
    "Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(8)", "Z(9)", "Z(12)", "Z(16)", "Z(24)",
    "Z(2)^2", "Z(2)^3", "Z(2)^4", "Z(3)^2", "Z(3)^3", "Z(2)*Z(4)", "Z(2)*Z(6)", "Z(4)^2",
    "D(8)", "D(16)", "D(32)", "Q(8)", "Q(16)", "Q(32)", "Z(2)*D(8)", "Z(2)*Q(8)", "Z(3)*D(8)",
    "Z(3)*Q(8)",
];

/// Every group of order k up to isomorphism, for k ≤ 15.
pub fn groups_of_order(k: u32) -> Result<&'static [&'static str]> {
    Ok(match k {
        1 => &["Z(1)"],
        2 => &["Z(2)"],
        3 => &["Z(3)"],
        4 => &["Z(4)", "Z(2)^2"],
        5 => &["Z(5)"],
        6 => &["Z(6)", "S(3)"],
        7 => &["Z(7)"],
        8 => &["Z(8)", "Z(2)*Z(4)", "Z(2)^3", "D(8)", "Q(8)"],
        9 => &["Z(9)", "Z(3)^2"],
        10 => &["Z(10)", "D(10)"],
        11 => &["Z(11)"],
        // Dic_12 = Z_3 ⋊ Z_4
        12 => &["Z(12)", "Z(2)*Z(6)", "A(4)", "D(12)", "Dstar(12)"],
        13 => &["Z(13)"],
        14 => &["Z(14)", "D(14)"],
        15 => &["Z(15)"],
        _ => return Err(Error::BadParameter(format!("order catalog covers k <= 15, got {k}"))),
    })
}
