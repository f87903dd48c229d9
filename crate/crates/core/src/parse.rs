//! Comma-separated modulus and residue lists as accepted on the command line.

use std::str::FromStr;

use crate::error::{Error, Result};

fn parse_list<T: FromStr>(input: &str, what: &str) -> Result<Vec<T>> {
    let input = input.trim();
    if input.is_empty() {
        return Err(Error::Empty);
    }
    input
        .split(',')
        .map(|item| {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("empty {what} in list"),
                });
            }
            if !item
                .strip_prefix('-')
                .unwrap_or(item)
                .bytes()
                .all(|b| b.is_ascii_digit())
            {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("{what} {item:?} is not a decimal integer"),
                });
            }
            item.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("{what} {item:?} is out of range"),
            })
        })
        .collect()
}

/// Parses `"2,3,5"`. Moduli wider than 64 bits are rejected here.
pub fn parse_modulus_list(input: &str) -> Result<Vec<u64>> {
    parse_list(input, "modulus")
}

/// Parses `"0,-1,4"`; residues may be negative or exceed their modulus.
pub fn parse_residue_list(input: &str) -> Result<Vec<i128>> {
    parse_list(input, "residue")
}
