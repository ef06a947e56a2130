use std::fmt::Write as _;

/// Shortest exact form for integral values, four decimals otherwise.
pub fn num(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.0}")
    } else {
        format!("{x:.4}")
    }
}

/// Left-aligned plain-text table.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(self.header.clone(), &mut out);
        for row in &self.rows {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(num(21282.0), "21282");
        assert_eq!(num(-4.0), "-4");
        assert_eq!(num(0.5), "0.5000");
    }

    #[test]
    fn header_only() {
        let t = Table::new(vec!["a", "bb"]);
        assert_eq!(t.render(), "a  bb\n");
    }

    #[test]
    fn columns_align() {
        let mut t = Table::new(vec!["x", "y"]);
        t.push(vec!["long".into(), "1".into()]);
        assert_eq!(t.render(), "x     y\nlong  1\n");
    }
}
