//! TSPLIB reader for symmetric TSP instances.
//!
//! Supported edge weight types are `EUC_2D`, `GEO` and `EXPLICIT` with the
//! formats `FULL_MATRIX`, `UPPER_ROW`, `LOWER_ROW`, `UPPER_DIAG_ROW` and
//! `LOWER_DIAG_ROW`.
//!
//! GEO coordinates are `DDD.MM` (degrees, then minutes after the point).
//! They are converted to radians with `π ≈ 3.141592` and measured on a
//! sphere of radius 6378.388 km, following the TSPLIB documentation. Integer
//! rounding adds one and truncates; real-valued mode keeps the raw arc
//! length.

use std::fs;
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::problems::{Metric, Rounding, TspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightType {
    Euc2d,
    Geo,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightFormat {
    FullMatrix,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
}

impl EdgeWeightFormat {
    fn entry_count(self, n: usize) -> Option<usize> {
        let tri = n.checked_mul(n.checked_sub(1)?)? / 2;
        match self {
            EdgeWeightFormat::FullMatrix => n.checked_mul(n),
            EdgeWeightFormat::UpperRow | EdgeWeightFormat::LowerRow => Some(tri),
            EdgeWeightFormat::UpperDiagRow | EdgeWeightFormat::LowerDiagRow => tri.checked_add(n),
        }
    }

    /// Positions `(i, j)` in the order the payload lists them.
    fn positions(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n {
            let cols = match self {
                EdgeWeightFormat::FullMatrix => 0..n,
                EdgeWeightFormat::UpperRow => i + 1..n,
                EdgeWeightFormat::LowerRow => 0..i,
                EdgeWeightFormat::UpperDiagRow => i..n,
                EdgeWeightFormat::LowerDiagRow => 0..i + 1,
            };
            out.extend(cols.map(|j| (i, j)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsplibDocument {
    pub name: String,
    pub comment: Option<String>,
    pub dimension: usize,
    pub edge_weight_type: EdgeWeightType,
    pub edge_weight_format: Option<EdgeWeightFormat>,
    /// Indexed by node number minus one.
    pub node_coords: Vec<(f64, f64)>,
    /// Raw `EDGE_WEIGHT_SECTION` payload.
    pub edge_weights: Vec<f64>,
    /// Keywords and sections that were skipped.
    pub warnings: Vec<String>,
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    comment: Option<String>,
    kind: Option<String>,
    dimension: Option<usize>,
    weight_type: Option<(usize, String)>,
    weight_format: Option<(usize, String)>,
}

enum Section {
    Coords,
    Weights,
    Skip,
}

fn is_numeric_line(line: &str) -> bool {
    line.split_whitespace().next().is_some_and(|t| t.parse::<f64>().is_ok())
}

/// Parses a TSPLIB document. Unknown keywords are skipped with a warning.
pub fn parse_tsplib(text: &str) -> Result<TsplibDocument> {
    let mut header = Header::default();
    let mut warnings = Vec::new();
    let mut coords: Vec<(usize, usize, f64, f64)> = Vec::new(); // (line, node, x, y)
    let mut weights: Vec<f64> = Vec::new();
    let mut coord_section_line = None;
    let mut weight_section_line = None;
    let mut section: Option<Section> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if section.is_some() && is_numeric_line(line) {
            match section {
                Some(Section::Coords) => {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != 3 {
                        return Err(Error::parse(lineno, format!("expected `node x y`, found `{line}`")));
                    }
                    let node = toks[0]
                        .parse::<usize>()
                        .map_err(|_| Error::parse(lineno, format!("bad node number `{}`", toks[0])))?;
                    let mut xy = [0.0; 2];
                    for (slot, tok) in xy.iter_mut().zip(&toks[1..]) {
                        *slot = tok
                            .parse::<f64>()
                            .ok()
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| Error::parse(lineno, format!("bad coordinate `{tok}`")))?;
                    }
                    coords.push((lineno, node, xy[0], xy[1]));
                }
                Some(Section::Weights) => {
                    for tok in line.split_whitespace() {
                        let w = tok
                            .parse::<f64>()
                            .ok()
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| Error::parse(lineno, format!("bad edge weight `{tok}`")))?;
                        weights.push(w);
                    }
                }
                _ => {}
            }
            continue;
        }
        section = None;

        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => {
                let mut parts = line.splitn(2, char::is_whitespace);
                (parts.next().unwrap_or(""), parts.next().map(str::trim).filter(|v| !v.is_empty()))
            }
        };
        let key = key.to_ascii_uppercase();
        let need = |v: Option<&str>| {
            v.map(str::to_string).ok_or_else(|| Error::parse(lineno, format!("keyword {key} needs a value")))
        };
        match key.as_str() {
            "NAME" => header.name = Some(need(value)?),
            "COMMENT" => header.comment = value.map(str::to_string),
            "TYPE" => header.kind = Some(need(value)?.to_ascii_uppercase()),
            "DIMENSION" => {
                let v = need(value)?;
                let d = v.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad DIMENSION `{v}`")))?;
                header.dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => header.weight_type = Some((lineno, need(value)?.to_ascii_uppercase())),
            "EDGE_WEIGHT_FORMAT" => header.weight_format = Some((lineno, need(value)?.to_ascii_uppercase())),
            "NODE_COORD_SECTION" => {
                if coord_section_line.replace(lineno).is_some() {
                    return Err(Error::parse(lineno, "duplicate NODE_COORD_SECTION"));
                }
                section = Some(Section::Coords);
            }
            "EDGE_WEIGHT_SECTION" => {
                if weight_section_line.replace(lineno).is_some() {
                    return Err(Error::parse(lineno, "duplicate EDGE_WEIGHT_SECTION"));
                }
                section = Some(Section::Weights);
            }
            "EOF" => break,
            k if k.ends_with("_SECTION") => {
                let msg = format!("line {lineno}: skipping {k}");
                warn!("{msg}");
                warnings.push(msg);
                section = Some(Section::Skip);
            }
            "NODE_COORD_TYPE" | "DISPLAY_DATA_TYPE" | "CAPACITY" => {
                let msg = format!("line {lineno}: ignoring {key}");
                warn!("{msg}");
                warnings.push(msg);
            }
            other => {
                let msg = format!("line {lineno}: unknown keyword `{other}` ignored");
                warn!("{msg}");
                warnings.push(msg);
            }
        }
    }

    match header.kind.as_deref() {
        Some("TSP") => {}
        Some(other) => return Err(Error::UnsupportedType(format!("TYPE {other}"))),
        None => {
            let msg = "no TYPE keyword; assuming TSP".to_string();
            warn!("{msg}");
            warnings.push(msg);
        }
    }
    let dimension = header.dimension.ok_or_else(|| Error::parse(last_line, "missing DIMENSION"))?;
    let (type_line, type_name) =
        header.weight_type.ok_or_else(|| Error::parse(last_line, "missing EDGE_WEIGHT_TYPE"))?;
    let edge_weight_type = match type_name.as_str() {
        "EUC_2D" => EdgeWeightType::Euc2d,
        "GEO" => EdgeWeightType::Geo,
        "EXPLICIT" => EdgeWeightType::Explicit,
        other => return Err(Error::UnsupportedType(format!("EDGE_WEIGHT_TYPE {other} (line {type_line})"))),
    };

    let mut doc = TsplibDocument {
        name: header.name.unwrap_or_default(),
        comment: header.comment,
        dimension,
        edge_weight_type,
        edge_weight_format: None,
        node_coords: Vec::new(),
        edge_weights: Vec::new(),
        warnings,
    };

    if edge_weight_type == EdgeWeightType::Explicit {
        let (fmt_line, fmt_name) =
            header.weight_format.ok_or_else(|| Error::parse(type_line, "EXPLICIT weights need EDGE_WEIGHT_FORMAT"))?;
        let format = match fmt_name.as_str() {
            "FULL_MATRIX" => EdgeWeightFormat::FullMatrix,
            "UPPER_ROW" => EdgeWeightFormat::UpperRow,
            "LOWER_ROW" => EdgeWeightFormat::LowerRow,
            "UPPER_DIAG_ROW" => EdgeWeightFormat::UpperDiagRow,
            "LOWER_DIAG_ROW" => EdgeWeightFormat::LowerDiagRow,
            other => return Err(Error::UnsupportedType(format!("EDGE_WEIGHT_FORMAT {other} (line {fmt_line})"))),
        };
        let section_line = weight_section_line.ok_or_else(|| Error::parse(last_line, "missing EDGE_WEIGHT_SECTION"))?;
        if !coords.is_empty() {
            return Err(Error::parse(section_line, "EXPLICIT instance also lists node coordinates"));
        }
        let expected =
            format.entry_count(dimension).ok_or_else(|| Error::parse(section_line, "DIMENSION too large"))?;
        if weights.len() != expected {
            return Err(Error::parse(
                section_line,
                format!("DIMENSION {dimension} needs {expected} weights, found {}", weights.len()),
            ));
        }
        doc.edge_weight_format = Some(format);
        doc.edge_weights = weights;
    } else {
        let section_line = coord_section_line.ok_or_else(|| Error::parse(last_line, "missing NODE_COORD_SECTION"))?;
        if !weights.is_empty() {
            return Err(Error::parse(section_line, "coordinate instance also lists edge weights"));
        }
        if coords.len() != dimension {
            return Err(Error::parse(
                section_line,
                format!("DIMENSION {dimension} but {} coordinate rows", coords.len()),
            ));
        }
        let mut placed = vec![None; dimension];
        for (line, node, x, y) in coords {
            if node == 0 || node > dimension {
                return Err(Error::parse(line, format!("node {node} outside 1..={dimension}")));
            }
            if placed[node - 1].replace((x, y)).is_some() {
                return Err(Error::parse(line, format!("node {node} listed twice")));
            }
        }
        doc.node_coords = placed.into_iter().map(|p| p.expect("all nodes placed")).collect();
    }
    Ok(doc)
}

pub fn read_tsplib(path: impl AsRef<Path>) -> Result<TsplibDocument> {
    parse_tsplib(&fs::read_to_string(path)?)
}

/// Realizes the distance matrix of a parsed document.
pub fn build_distances(doc: &TsplibDocument, rounding: Rounding) -> Result<TspInstance> {
    match doc.edge_weight_type {
        EdgeWeightType::Euc2d => TspInstance::from_coords(&doc.name, &doc.node_coords, Metric::Euclidean2d, rounding),
        EdgeWeightType::Geo => TspInstance::from_coords(&doc.name, &doc.node_coords, Metric::Geo, rounding),
        EdgeWeightType::Explicit => {
            let format =
                doc.edge_weight_format.ok_or_else(|| Error::UnsupportedType("EXPLICIT without a format".into()))?;
            let n = doc.dimension;
            let positions = format.positions(n);
            if positions.len() != doc.edge_weights.len() {
                return Err(Error::DimensionMismatch { expected: positions.len(), found: doc.edge_weights.len() });
            }
            let mut rows = vec![vec![0.0; n]; n];
            for ((i, j), &w) in positions.into_iter().zip(&doc.edge_weights) {
                rows[i][j] = w;
                if format != EdgeWeightFormat::FullMatrix {
                    rows[j][i] = w;
                }
            }
            TspInstance::from_matrix(&doc.name, rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SMALL: &str = "NAME : tiny
TYPE : TSP
COMMENT : three points
DIMENSION : 3
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 4
3 0 4
EOF
";

    #[test]
    fn minimal_euclidean_document() {
        let doc = parse_tsplib(SMALL).unwrap();
        assert_eq!(doc.name, "tiny");
        assert_eq!(doc.dimension, 3);
        assert_eq!(doc.node_coords, vec![(0.0, 0.0), (3.0, 4.0), (0.0, 4.0)]);
        let inst = build_distances(&doc, Rounding::RealValued).unwrap();
        assert_eq!(inst.distance(0, 1), 5.0);
        assert_eq!(inst.distance(1, 2), 3.0);
    }

    #[test]
    fn dimension_disagreeing_with_rows() {
        let text = SMALL.replace("DIMENSION : 3", "DIMENSION : 4");
        match parse_tsplib(&text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_full_matrix_passthrough() {
        let text = "NAME: m\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n\
                    EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2\n1 0 3\n2 3 0\nEOF\n";
        let inst = build_distances(&parse_tsplib(text).unwrap(), Rounding::TsplibInteger).unwrap();
        assert_eq!(inst.matrix(), vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]]);
    }

    #[test]
    fn triangular_formats_agree() {
        let full = [[0.0, 1.0, 2.0, 4.0], [1.0, 0.0, 3.0, 5.0], [2.0, 3.0, 0.0, 6.0], [4.0, 5.0, 6.0, 0.0]];
        let cases = [
            ("UPPER_ROW", "1 2 4\n3 5\n6"),
            ("LOWER_ROW", "1\n2 3\n4 5 6"),
            ("UPPER_DIAG_ROW", "0 1 2 4\n0 3 5\n0 6\n0"),
            ("LOWER_DIAG_ROW", "0\n1 0\n2 3 0\n4 5 6 0"),
        ];
        for (fmt, payload) in cases {
            let text = format!(
                "NAME: t\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\n\
                 EDGE_WEIGHT_FORMAT: {fmt}\nEDGE_WEIGHT_SECTION\n{payload}\nEOF\n"
            );
            let inst = build_distances(&parse_tsplib(&text).unwrap(), Rounding::RealValued).unwrap();
            let expected: Vec<Vec<f64>> = full.iter().map(|r| r.to_vec()).collect();
            assert_eq!(inst.matrix(), expected, "{fmt}");
        }
    }

    #[test]
    fn sections_in_any_order_and_unknown_keywords() {
        let text = "NODE_COORD_SECTION\n2 3 4\n1 0 0\n3 0 4\nFOO_BAR : 7\nDIMENSION: 3\n\
                    EDGE_WEIGHT_TYPE: EUC_2D\nTYPE: TSP\nDISPLAY_DATA_SECTION\n1 0 0\n";
        let doc = parse_tsplib(text).unwrap();
        assert_eq!(doc.node_coords[1], (3.0, 4.0));
        assert_eq!(doc.warnings.len(), 2);
    }

    #[test]
    fn unsupported_types() {
        let atsp = SMALL.replace("TYPE : TSP", "TYPE : ATSP");
        assert!(matches!(parse_tsplib(&atsp), Err(Error::UnsupportedType(_))));
        let att = SMALL.replace("EUC_2D", "ATT");
        assert!(matches!(parse_tsplib(&att), Err(Error::UnsupportedType(_))));
        let func = "TYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FUNCTION\n";
        assert!(matches!(parse_tsplib(func), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn asymmetric_full_matrix_rejected() {
        let text = "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n\
                    EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2\n9 0 3\n2 3 0\n";
        let doc = parse_tsplib(text).unwrap();
        assert!(build_distances(&doc, Rounding::RealValued).is_err());
    }

    #[test]
    fn bad_tokens_report_their_line() {
        let text = SMALL.replace("2 3 4", "2 3 x");
        assert!(matches!(parse_tsplib(&text), Err(Error::Parse { line: 8, .. })));
        let dup = SMALL.replace("3 0 4", "2 0 4");
        assert!(matches!(parse_tsplib(&dup), Err(Error::Parse { line: 9, .. })));
    }

    proptest! {
        #[test]
        fn parser_never_panics(text in "\\PC{0,400}") {
            let _ = parse_tsplib(&text);
        }

        #[test]
        fn parser_never_panics_on_keyword_soup(
            lines in prop::collection::vec(
                prop_oneof![
                    Just("TYPE: TSP".to_string()),
                    Just("DIMENSION: 3".to_string()),
                    Just("DIMENSION: 18446744073709551615".to_string()),
                    Just("EDGE_WEIGHT_TYPE: EXPLICIT".to_string()),
                    Just("EDGE_WEIGHT_TYPE: GEO".to_string()),
                    Just("EDGE_WEIGHT_FORMAT: UPPER_ROW".to_string()),
                    Just("EDGE_WEIGHT_FORMAT: FULL_MATRIX".to_string()),
                    Just("NODE_COORD_SECTION".to_string()),
                    Just("EDGE_WEIGHT_SECTION".to_string()),
                    Just("EOF".to_string()),
                    "[0-9]{1,3} [0-9.]{1,5} [0-9.-]{1,5}",
                    "[0-9 ]{1,12}",
                ],
                0..25,
            )
        ) {
            let text = lines.join("\n");
            if let Ok(doc) = parse_tsplib(&text) {
                if let Ok(inst) = build_distances(&doc, Rounding::RealValued) {
                    let n = inst.dimension();
                    for i in 0..n {
                        prop_assert_eq!(inst.distance(i, i), 0.0);
                        for j in 0..n {
                            prop_assert_eq!(inst.distance(i, j), inst.distance(j, i));
                            prop_assert!(inst.distance(i, j) >= 0.0);
                        }
                    }
                }
            }
        }
    }
}
