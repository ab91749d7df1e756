use std::fmt::Write;

use tractable_core::rational::{self, Rational};
use tractable_core::simplicial1d::SimplicialSystem1D;
use tractable_core::TractabilityReport;

use crate::output::CliError;

const SIZE: f64 = 400.0;
const PAD: f64 = 30.0;
const SHADES: [&str; 4] = ["#8ecae6", "#ffb703", "#90be6d", "#f28482"];

/// Graph of `g` on `X(K)` with the terminal supports shaded.
pub fn plot(sys: &SimplicialSystem1D, report: &TractabilityReport) -> Result<String, CliError> {
    let k = sys.k();
    let lo = rational::to_f64(k.left());
    let width = rational::to_f64(k.right()) - lo;
    let sx = |x: f64| PAD + (x - lo) / width * SIZE;
    let sy = |y: f64| PAD + SIZE - (y - lo) / width * SIZE;
    let full = SIZE + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{full}" height="{full}" fill="white"/>"#);
    for (i, m) in report.measures.iter().enumerate() {
        for [a, b] in &m.support {
            let (a, b) = (parse(a)?, parse(b)?);
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}" fill-opacity="0.35"><title>{}</title></rect>"#,
                sx(a),
                sy(b),
                sx(b) - sx(a),
                sy(a) - sy(b),
                SHADES[i % SHADES.len()],
                m.class.join(" ")
            );
        }
    }
    for v in k.vertices() {
        let x = rational::to_f64(v);
        let _ = writeln!(
            s,
            r##"<line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}" stroke="#ccc"/><line x1="{1:.3}" y1="{3:.3}" x2="{4:.3}" y2="{3:.3}" stroke="#ccc"/>"##,
            sx(x),
            PAD,
            PAD + SIZE,
            sy(x),
            PAD + SIZE
        );
    }
    let _ = writeln!(
        s,
        r##"<line x1="{PAD}" y1="{0}" x2="{0}" y2="{PAD}" stroke="#999" stroke-dasharray="4 4"/>"##,
        PAD + SIZE
    );
    let points: Vec<String> = sys
        .kstar()
        .vertices()
        .iter()
        .zip(sys.vmap())
        .map(|(x, &v)| format!("{:.3},{:.3}", sx(rational::to_f64(x)), sy(rational::to_f64(k.vertex(v)))))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#023047" stroke-width="2"/>"##,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    Ok(s)
}

fn parse(text: &str) -> Result<f64, CliError> {
    let r: Rational = rational::parse(text)?;
    Ok(rational::to_f64(&r))
}
