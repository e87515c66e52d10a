//! Built-in fusion tables of the c = 4/5 minimal model and its extension.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::ring::{Flavor, FusionRing, Label};
use crate::error::{Error, Result};
use crate::scalar::parse_scalar;

pub const TABLE_NAMES: [&str; 4] = ["C_full", "A_sub", "B_ext", "sigma_fixed_sub"];

const C_LABELS: [&str; 10] = ["0", "2/5", "1/40", "7/5", "21/40", "1/15", "3", "13/8", "2/3", "1/8"];

// Row i, column j lists the summands of L(h_i) x L(h_j); the identity row is
// implicit.
const C_ROWS: [[&str; 10]; 9] = [
    ["2/5", "0:7/5", "1/8:21/40", "2/5:3", "1/40:13/8", "1/15:2/3", "7/5", "21/40", "1/15", "1/40"],
    [
        "1/40",
        "1/8:21/40",
        "0:7/5:2/3:1/15",
        "1/40:13/8",
        "2/5:3:1/15:2/3",
        "1/40:13/8:21/40:1/8",
        "21/40",
        "7/5:1/15",
        "21/40:1/40",
        "1/15:2/5",
    ],
    ["7/5", "2/5:3", "1/40:13/8", "0:7/5", "1/8:21/40", "2/3:1/15", "2/5", "1/40", "1/15", "21/40"],
    [
        "21/40",
        "1/40:13/8",
        "2/5:3:1/15:2/3",
        "1/8:21/40",
        "0:7/5:2/3:1/15",
        "1/8:21/40:13/8:1/40",
        "1/40",
        "2/5:1/15",
        "1/40:21/40",
        "1/15:7/5",
    ],
    [
        "1/15",
        "1/15:2/3",
        "1/40:13/8:21/40:1/8",
        "2/3:1/15",
        "1/8:21/40:13/8:1/40",
        "0:7/5:2/3:1/15:3:2/5",
        "1/15",
        "1/40:21/40",
        "2/5:1/15:7/5",
        "1/40:21/40",
    ],
    ["3", "7/5", "21/40", "2/5", "1/40", "1/15", "0", "1/8", "2/3", "13/8"],
    ["13/8", "21/40", "7/5:1/15", "1/40", "2/5:1/15", "1/40:21/40", "1/8", "0:2/3", "1/8:13/8", "2/3:3"],
    ["2/3", "1/15", "21/40:1/40", "1/15", "1/40:21/40", "2/5:1/15:7/5", "2/3", "1/8:13/8", "0:2/3:3", "1/8:13/8"],
    ["1/8", "1/40", "1/15:2/5", "21/40", "1/15:7/5", "1/40:21/40", "13/8", "2/3:3", "1/8:13/8", "0:2/3"],
];

const A_LABELS: [&str; 6] = ["0", "2/5", "7/5", "1/15", "3", "2/3"];

const A_ROWS: [[&str; 6]; 5] = [
    ["2/5", "0:7/5", "2/5:3", "1/15:2/3", "7/5", "1/15"],
    ["7/5", "2/5:3", "0:7/5", "2/3:1/15", "2/5", "1/15"],
    ["1/15", "1/15:2/3", "2/3:1/15", "0:7/5:2/3:1/15:3:2/5", "1/15", "2/5:1/15:7/5"],
    ["3", "7/5", "2/5", "1/15", "0", "2/3"],
    ["2/3", "1/15", "1/15", "2/5:1/15:7/5", "2/3", "0:2/3:3"],
];

/// Extension labels as `(name, weight, flavor)` in table order.
pub const B_LABELS: [(&str, &str, Flavor); 6] = [
    ("W(0)", "0", Flavor::None),
    ("W(2/5)", "2/5", Flavor::None),
    ("W(2/3)", "2/3", Flavor::Plus),
    ("W(1/15)", "1/15", Flavor::Plus),
    ("W(2/3)", "2/3", Flavor::Minus),
    ("W(1/15)", "1/15", Flavor::Minus),
];

const B_ROWS: [[&str; 6]; 5] = [
    ["W(2/5)", "W(0):W(2/5)", "W(1/15)+", "W(1/15)+:W(2/3)+", "W(1/15)-", "W(1/15)-:W(2/3)-"],
    ["W(2/3)+", "W(1/15)+", "W(2/3)-", "W(1/15)-", "W(0)", "W(2/5)"],
    ["W(1/15)+", "W(1/15)+:W(2/3)+", "W(1/15)-", "W(1/15)-:W(2/3)-", "W(2/5)", "W(0):W(2/5)"],
    ["W(2/3)-", "W(1/15)-", "W(0)", "W(2/5)", "W(2/3)+", "W(1/15)+"],
    ["W(1/15)-", "W(1/15)-:W(2/3)-", "W(2/5)", "W(0):W(2/5)", "W(1/15)+", "W(1/15)+:W(2/3)+"],
];

pub const SIGMA_FIXED_LABELS: [&str; 4] = ["0", "3", "2/5", "7/5"];

fn minimal_labels(weights: &[&str]) -> Vec<Label> {
    weights.iter().map(|w| Label::new(*w, parse_scalar(w).expect("built-in weight"), Flavor::None)).collect()
}

fn from_rows<const N: usize>(name: &str, labels: Vec<Label>, rows: &[[&str; N]]) -> Result<FusionRing> {
    let keys: Vec<_> = labels.iter().map(Label::key).collect();
    let find = |k: &str| keys.iter().position(|x| x == k).ok_or_else(|| Error::UnknownLabel(k.to_string()));
    let mut entries = Vec::new();
    for j in 0..N {
        entries.push((0, j, j, 1));
    }
    for row in rows {
        let i = find(row[0])?;
        entries.push((i, 0, i, 1));
        for (j, cell) in row.iter().enumerate().skip(1) {
            let mut seen = Vec::new();
            for part in cell.split(':') {
                let k = find(part)?;
                if seen.contains(&k) {
                    return Err(Error::InvalidTable(format!("repeated summand {part} in {name}")));
                }
                seen.push(k);
                entries.push((i, j, k, 1));
            }
        }
    }
    FusionRing::new(name, labels, &entries)
}

/// All ten irreducible modules of the c = 4/5 minimal model.
pub fn c_full() -> FusionRing {
    from_rows("C_full", minimal_labels(&C_LABELS), &C_ROWS).expect("built-in table C_full")
}

/// The six modules without the twisted-sector weights 1/8, 13/8, 1/40,
/// 21/40, stored as transcribed (not derived from [`c_full`]).
pub fn a_sub() -> FusionRing {
    from_rows("A_sub", minimal_labels(&A_LABELS), &A_ROWS).expect("built-in table A_sub")
}

/// The fusion ring of the six irreducible modules of the extension W(0).
pub fn b_ext() -> FusionRing {
    let labels =
        B_LABELS.iter().map(|(n, w, f)| Label::new(*n, parse_scalar(w).expect("built-in weight"), *f)).collect();
    from_rows("B_ext", labels, &B_ROWS).expect("built-in table B_ext")
}

/// The subring {0, 3, 2/5, 7/5}.
pub fn sigma_fixed_sub() -> FusionRing {
    a_sub().restrict("sigma_fixed_sub", &SIGMA_FIXED_LABELS).expect("closed subring")
}

pub fn builtin_table(name: &str) -> Result<FusionRing> {
    match name {
        "C_full" => Ok(c_full()),
        "A_sub" => Ok(a_sub()),
        "B_ext" => Ok(b_ext()),
        "sigma_fixed_sub" => Ok(sigma_fixed_sub()),
        _ => Err(Error::UnknownLabel(format!("table {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summands(r: &FusionRing, i: &str, j: &str) -> Vec<alloc::string::String> {
        r.multiply_keys(i, j).unwrap().into_iter().map(|(l, m)| format!("{}*{m}", l.key())).collect()
    }

    #[test]
    fn builtin_rings_satisfy_axioms() {
        for name in TABLE_NAMES {
            let r = builtin_table(name).unwrap();
            assert!(r.check_axioms().passed(), "{name}: {:?}", r.check_axioms());
        }
        assert!(builtin_table("bogus").is_err());
    }

    #[test]
    fn table_c_products() {
        let c = c_full();
        assert_eq!(summands(&c, "2/5", "2/5"), ["0*1", "7/5*1"]);
        let mut six = summands(&c, "1/15", "1/15");
        six.sort();
        assert_eq!(six, ["0*1", "1/15*1", "2/3*1", "2/5*1", "3*1", "7/5*1"]);
    }

    #[test]
    fn table_a_is_the_restriction_of_table_c() {
        let restricted = c_full().restrict("A_sub", &A_LABELS).unwrap();
        assert_eq!(restricted, a_sub());
    }

    #[test]
    fn table_b_products() {
        let b = b_ext();
        assert_eq!(summands(&b, "W(2/3)+", "W(2/3)+"), ["W(2/3)-*1"]);
        assert_eq!(summands(&b, "W(1/15)+", "W(1/15)-"), ["W(0)*1", "W(2/5)*1"]);
        assert_eq!(b.dual(b.index_of("W(2/3)+").unwrap()), b.index_of("W(2/3)-").unwrap());
        assert_eq!(b.dual(1), 1);
    }

    #[test]
    fn sigma_fixed_products() {
        let s = sigma_fixed_sub();
        assert_eq!(summands(&s, "3", "3"), ["0*1"]);
        assert_eq!(s.len(), 4);
    }
}
