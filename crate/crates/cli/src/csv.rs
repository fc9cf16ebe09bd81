use std::fmt::Write;

/// Fixed 12-significant-digit scientific notation; `nan` for NaN, and
/// negative zero printed as zero.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == 0.0 {
        format!("{:.11e}", 0.0)
    } else {
        format!("{x:.11e}")
    }
}

/// CSV document: `#` metadata lines, one header row, data rows, then any
/// trailing `#` lines.
#[derive(Debug, Default, Clone)]
pub struct CsvDoc {
    meta: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    trailer: Vec<(String, String)>,
}

impl CsvDoc {
    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn header(&mut self, columns: Vec<String>) {
        self.header = columns;
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.header.len());
        self.rows.push(fields);
    }

    pub fn trailer(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.trailer.push((key.into(), value.into()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        for (k, v) in &self.trailer {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }
}

/// Makes a free-form message safe for a single CSV field.
pub fn field_safe(msg: &str) -> String {
    msg.replace([',', '\n', '\r'], ";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(-0.5), "-5.00000000000e-1");
        assert_eq!(fmt_num(0.0), fmt_num(-0.0));
        assert_eq!(fmt_num(f64::NAN), "nan");
        let x = 0.123456789012345;
        assert_eq!(fmt_num(x), "1.23456789012e-1");
        let back: f64 = fmt_num(x).parse().unwrap();
        assert!((back - x).abs() <= 5e-12 * x);
    }

    #[test]
    fn renders_in_order() {
        let mut d = CsvDoc::default();
        d.meta("a", "1");
        d.header(vec!["x".into(), "y".into()]);
        d.row(vec!["1".into(), "2".into()]);
        d.trailer("metric.z", "3");
        assert_eq!(d.render(), "# a=1\nx,y\n1,2\n# metric.z=3\n");
        assert_eq!(field_safe("a,b\nc"), "a;b;c");
    }
}
