//! Keyword-header instance files.
//!
//! ```text
//! PROBLEM NAME: eil51_01_bsc_01_01
//! KNAPSACK DATA TYPE: bounded strongly corr
//! DIMENSION: 51
//! NUMBER OF ITEMS: 50
//! CAPACITY OF KNAPSACK: 4029
//! MAX TIME: 5413
//! MIN SPEED: 0.1
//! MAX SPEED: 1
//! EDGE_WEIGHT_TYPE: CEIL_2D
//! NODE_COORD_SECTION (INDEX, X, Y):
//! 1 37 52
//! ...
//! ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):
//! 1 101 1 2
//! ...
//! ```
//!
//! Header lines may come in any order but must precede the sections. An
//! `EXPLICIT` instance replaces the coordinate section with
//! `EDGE_WEIGHT_SECTION:` followed by `n` rows of `n` integers. Fields may be
//! separated by spaces or tabs. A trailing `EOF` line is accepted.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::instance::{EdgeWeightType, Instance, Item, Limits};
use crate::error::{Error, ParseError};
use crate::Scalar;

const NODE_COORD_HEADER: &str = "NODE_COORD_SECTION (INDEX, X, Y):";
const EDGE_WEIGHT_HEADER: &str = "EDGE_WEIGHT_SECTION:";
const ITEMS_HEADER: &str = "ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):";

#[derive(Default)]
struct Header<S> {
    name: Option<String>,
    knapsack_data_type: Option<String>,
    dimension: Option<usize>,
    num_items: Option<usize>,
    capacity: Option<u64>,
    max_time: Option<S>,
    min_speed: Option<S>,
    max_speed: Option<S>,
    edge_weight_type: Option<EdgeWeightType>,
}

fn field<T: FromStr>(token: &str, line: usize, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("{what}: expected a number, found {token:?}")))
}

fn require<T>(value: Option<T>, key: &str) -> Result<T, ParseError> {
    value.ok_or_else(|| ParseError::new(0, format!("missing header key {key:?}")))
}

/// Non-blank lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn section_row<'a>(
    lines: &mut Lines<'a>,
    section: &str,
    row: usize,
    expected: usize,
) -> Result<(usize, Vec<&'a str>), ParseError> {
    let (ln, text) = lines.next().ok_or_else(|| {
        ParseError::new(
            0,
            format!("{section}: file ends after {row} of the expected rows"),
        )
    })?;
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != expected {
        return Err(ParseError::new(
            ln,
            format!(
                "{section}: expected {expected} fields, found {}",
                tokens.len()
            ),
        ));
    }
    Ok((ln, tokens))
}

fn check_index(token: &str, expected: usize, ln: usize, section: &str) -> Result<(), ParseError> {
    let index: usize = field(token, ln, section)?;
    if index != expected {
        return Err(ParseError::new(
            ln,
            format!("{section}: expected index {expected}, found {index}"),
        ));
    }
    Ok(())
}

/// Parses an instance file.
pub fn parse_instance<S: Scalar>(text: &str) -> Result<Instance<S>, Error> {
    let mut header = Header::<S>::default();
    let mut coords: Option<Vec<[f64; 2]>> = None;
    let mut matrix: Option<Vec<Vec<u64>>> = None;
    let mut items: Option<Vec<Item>> = None;
    let mut in_sections = false;

    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    while let Some((ln, line)) = lines.next() {
        if line == "EOF" {
            break;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            in_sections = true;
            let n = header
                .dimension
                .ok_or_else(|| ParseError::new(ln, "NODE_COORD_SECTION before DIMENSION"))?;
            let mut section = Vec::with_capacity(n);
            for row in 0..n {
                let (rl, t) = section_row(&mut lines, "NODE_COORD_SECTION", row, 3)?;
                check_index(t[0], row + 1, rl, "NODE_COORD_SECTION")?;
                let x: f64 = field(t[1], rl, "x coordinate")?;
                let y: f64 = field(t[2], rl, "y coordinate")?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(ParseError::new(rl, "coordinates must be finite").into());
                }
                section.push([x, y]);
            }
            coords = Some(section);
        } else if line.starts_with("EDGE_WEIGHT_SECTION") {
            in_sections = true;
            let n = header
                .dimension
                .ok_or_else(|| ParseError::new(ln, "EDGE_WEIGHT_SECTION before DIMENSION"))?;
            let mut rows = Vec::with_capacity(n);
            for row in 0..n {
                let (rl, t) = section_row(&mut lines, "EDGE_WEIGHT_SECTION", row, n)?;
                let values = t
                    .iter()
                    .map(|tok| field::<u64>(tok, rl, "distance"))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(values);
            }
            matrix = Some(rows);
        } else if line.starts_with("ITEMS SECTION") {
            in_sections = true;
            let n = header
                .dimension
                .ok_or_else(|| ParseError::new(ln, "ITEMS SECTION before DIMENSION"))?;
            let m = header
                .num_items
                .ok_or_else(|| ParseError::new(ln, "ITEMS SECTION before NUMBER OF ITEMS"))?;
            let mut section = Vec::with_capacity(m);
            for row in 0..m {
                let (rl, t) = section_row(&mut lines, "ITEMS SECTION", row, 4)?;
                check_index(t[0], row + 1, rl, "ITEMS SECTION")?;
                let profit: u64 = field(t[1], rl, "profit")?;
                let weight: u64 = field(t[2], rl, "weight")?;
                let city: usize = field(t[3], rl, "assigned node")?;
                if profit == 0 || weight == 0 {
                    return Err(ParseError::new(
                        rl,
                        format!("item {}: profit and weight must be positive", row + 1),
                    )
                    .into());
                }
                if city < 2 || city >= n {
                    return Err(ParseError::new(
                        rl,
                        format!(
                            "item {} is assigned to city {city}; items must lie on cities 2..={}",
                            row + 1,
                            n - 1
                        ),
                    )
                    .into());
                }
                section.push(Item::new(profit, weight, city - 1));
            }
            items = Some(section);
        } else {
            if in_sections {
                return Err(ParseError::new(
                    ln,
                    format!("unexpected line after data sections: {line:?}"),
                )
                .into());
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                ParseError::new(ln, format!("expected `KEY: value`, found {line:?}"))
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "PROBLEM NAME" => header.name = Some(value.to_string()),
                "KNAPSACK DATA TYPE" => header.knapsack_data_type = Some(value.to_string()),
                "DIMENSION" => header.dimension = Some(field(value, ln, key)?),
                "NUMBER OF ITEMS" => header.num_items = Some(field(value, ln, key)?),
                "CAPACITY OF KNAPSACK" => header.capacity = Some(field(value, ln, key)?),
                "MAX TIME" => header.max_time = Some(field(value, ln, key)?),
                "MIN SPEED" => header.min_speed = Some(field(value, ln, key)?),
                "MAX SPEED" => header.max_speed = Some(field(value, ln, key)?),
                "EDGE_WEIGHT_TYPE" => {
                    header.edge_weight_type = Some(match value {
                        "CEIL_2D" => EdgeWeightType::Ceil2d,
                        "EXPLICIT" => EdgeWeightType::Explicit,
                        other => {
                            return Err(ParseError::new(
                                ln,
                                format!("unsupported EDGE_WEIGHT_TYPE {other:?}"),
                            )
                            .into())
                        }
                    })
                }
                other => {
                    return Err(ParseError::new(ln, format!("unknown header key {other:?}")).into())
                }
            }
        }
    }

    let name = require(header.name, "PROBLEM NAME")?;
    let n = require(header.dimension, "DIMENSION")?;
    let m = require(header.num_items, "NUMBER OF ITEMS")?;
    let limits = Limits {
        capacity: require(header.capacity, "CAPACITY OF KNAPSACK")?,
        max_time: require(header.max_time, "MAX TIME")?,
        min_speed: require(header.min_speed, "MIN SPEED")?,
        max_speed: require(header.max_speed, "MAX SPEED")?,
    };
    let kind = require(header.edge_weight_type, "EDGE_WEIGHT_TYPE")?;
    let items = match items {
        Some(items) => items,
        None if m == 0 => Vec::new(),
        None => return Err(ParseError::new(0, "missing ITEMS SECTION").into()),
    };
    let instance = match kind {
        EdgeWeightType::Ceil2d => {
            if matrix.is_some() {
                return Err(
                    ParseError::new(0, "EDGE_WEIGHT_SECTION given for a CEIL_2D instance").into(),
                );
            }
            let coords = coords.ok_or_else(|| ParseError::new(0, "missing NODE_COORD_SECTION"))?;
            Instance::from_coords(name, coords, items, limits)?
        }
        EdgeWeightType::Explicit => {
            if coords.is_some() {
                return Err(ParseError::new(
                    0,
                    "NODE_COORD_SECTION given for an EXPLICIT instance",
                )
                .into());
            }
            let matrix = matrix.ok_or_else(|| ParseError::new(0, "missing EDGE_WEIGHT_SECTION"))?;
            Instance::from_matrix(name, matrix, items, limits)?
        }
    };
    debug_assert_eq!(instance.num_cities(), n);
    Ok(instance.with_knapsack_data_type(header.knapsack_data_type))
}

impl<S: Scalar> FromStr for Instance<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

/// Canonical text form; parsing it yields an identical instance.
impl<S: Scalar> fmt::Display for Instance<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_cities();
        writeln!(f, "PROBLEM NAME: {}", self.name)?;
        if let Some(kind) = &self.knapsack_data_type {
            writeln!(f, "KNAPSACK DATA TYPE: {kind}")?;
        }
        writeln!(f, "DIMENSION: {n}")?;
        writeln!(f, "NUMBER OF ITEMS: {}", self.items.len())?;
        writeln!(f, "CAPACITY OF KNAPSACK: {}", self.limits.capacity)?;
        writeln!(f, "MAX TIME: {}", self.limits.max_time)?;
        writeln!(f, "MIN SPEED: {}", self.limits.min_speed)?;
        writeln!(f, "MAX SPEED: {}", self.limits.max_speed)?;
        writeln!(f, "EDGE_WEIGHT_TYPE: {}", self.edge_weight_type.keyword())?;
        match &self.coords {
            Some(coords) => {
                writeln!(f, "{NODE_COORD_HEADER}")?;
                for (i, [x, y]) in coords.iter().enumerate() {
                    writeln!(f, "{} {x} {y}", i + 1)?;
                }
            }
            None => {
                writeln!(f, "{EDGE_WEIGHT_HEADER}")?;
                for a in 0..n {
                    let mut row = String::new();
                    for (b, d) in self.dist_row(a).iter().enumerate() {
                        if b > 0 {
                            row.push(' ');
                        }
                        write!(row, "{d}")?;
                    }
                    writeln!(f, "{row}")?;
                }
            }
        }
        writeln!(f, "{ITEMS_HEADER}")?;
        for (i, item) in self.items.iter().enumerate() {
            writeln!(
                f,
                "{} {} {} {}",
                i + 1,
                item.profit,
                item.weight,
                item.city + 1
            )?;
        }
        Ok(())
    }
}

/// Serializes an instance to its canonical text form.
pub fn serialize_instance<S: Scalar>(instance: &Instance<S>) -> String {
    instance.to_string()
}
