//! CSV and SVG writers. Floats are written with 17 significant digits.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::AppError;
use crate::reproduce::ErrorTable;

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a header row and numeric rows.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<f64>]) -> Result<(), AppError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| fmt_f64(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// `iteration,error` with 1-based iteration numbers.
pub fn write_error_history<W: Write>(out: W, history: &[f64]) -> Result<(), AppError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iteration", "error"])?;
    for (i, e) in history.iter().enumerate() {
        w.write_record([(i + 1).to_string(), fmt_f64(*e)])?;
    }
    w.flush()?;
    Ok(())
}

/// `curve,<checkpoint>...` with one row per curve.
pub fn write_error_table<W: Write>(out: W, table: &ErrorTable) -> Result<(), AppError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["curve".to_string()];
    header.extend(table.checkpoints().iter().map(usize::to_string));
    w.write_record(&header)?;
    for (label, values) in table.rows() {
        let mut record = vec![label.to_string()];
        record.extend(values.iter().map(|v| fmt_f64(*v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Coordinate column names for a point dimension.
pub fn coord_header(dim: usize) -> Vec<String> {
    ["x", "y", "z"].iter().take(dim).map(|s| s.to_string()).collect()
}

/// Human-readable error table.
pub fn format_error_table(table: &ErrorTable) -> String {
    let mut s = format!("{:<18}", "iterations");
    for c in table.checkpoints() {
        let _ = write!(s, "{c:>12}");
    }
    s.push('\n');
    for (label, values) in table.rows() {
        let _ = write!(s, "{label:<18}");
        for v in values {
            let _ = write!(s, "{v:>12.3e}");
        }
        s.push('\n');
    }
    s
}

/// One 2D polyline of an SVG plot.
#[derive(Debug, Clone)]
pub struct SvgPath {
    pub label: String,
    pub points: Vec<Vec<f64>>,
    pub color: String,
    pub dashed: bool,
}

/// Renders 2D polylines and marker points. The view box is the bounding box of
/// everything drawn plus a 5% margin; `y` points up.
pub fn render_svg(paths: &[SvgPath], markers: &[Vec<f64>]) -> String {
    let all = paths.iter().flat_map(|p| p.points.iter()).chain(markers.iter());
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(-p[1]);
        ymax = ymax.max(-p[1]);
    }
    if !xmin.is_finite() {
        (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
    }
    let width = (xmax - xmin).max(1e-9);
    let height = (ymax - ymin).max(1e-9);
    let (mx, my) = (0.05 * width, 0.05 * height);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        xmin - mx,
        ymin - my,
        width + 2.0 * mx,
        height + 2.0 * my,
        (600.0 * (height + 2.0 * my) / (width + 2.0 * mx)).round()
    );
    for p in paths {
        let coords: Vec<String> = p.points.iter().map(|q| format!("{},{}", q[0], -q[1])).collect();
        let dash = if p.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"  <polyline data-label="{}" fill="none" stroke="{}" stroke-width="1.5" vector-effect="non-scaling-stroke"{} points="{}"/>"#,
            p.label,
            p.color,
            dash,
            coords.join(" ")
        );
    }
    let r = 0.01 * width.max(height);
    for m in markers {
        let _ = writeln!(s, r#"  <circle cx="{}" cy="{}" r="{r}" fill="black"/>"#, m[0], -m[1]);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI, -2.5e-300, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["t".into(), "v".into()], &[vec![0.0, 1.0]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,v");
        assert_eq!(lines[1].split(',').count(), 2);

        let mut buf = Vec::new();
        write_error_history(&mut buf, &[0.5, 0.25]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("iteration,error\n1,"));
    }

    #[test]
    fn svg_has_one_path_per_curve() {
        let svg = render_svg(
            &[
                SvgPath {
                    label: "a".into(),
                    points: vec![vec![0.0, 0.0], vec![1.0, 1.0]],
                    color: "red".into(),
                    dashed: false,
                },
                SvgPath {
                    label: "control".into(),
                    points: vec![vec![0.0, 0.0], vec![1.0, 0.0]],
                    color: "gray".into(),
                    dashed: true,
                },
            ],
            &[vec![0.5, 0.5]],
        );
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.contains(r#"viewBox="-0.05 -1.05 1.1 1.1""#));
    }
}
