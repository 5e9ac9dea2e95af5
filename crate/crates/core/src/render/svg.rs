use alloc::string::String;
use core::fmt::{self, Write};

use super::model::{Anchor, Legend, Shape, Swatch};

/// Prints lengths with at most two decimals and no trailing zeros.
pub(crate) struct Num(pub f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = libm::round(self.0 * 100.0) / 100.0;
        if v == 0.0 {
            return f.write_str("0");
        }
        let mut buf = String::new();
        write!(buf, "{v:.2}")?;
        let trimmed = buf.trim_end_matches('0').trim_end_matches('.');
        f.write_str(trimmed)
    }
}

pub(crate) struct Escaped<'a>(pub &'a str);

impl fmt::Display for Escaped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.0.chars() {
            match c {
                '&' => f.write_str("&amp;")?,
                '<' => f.write_str("&lt;")?,
                '>' => f.write_str("&gt;")?,
                '"' => f.write_str("&quot;")?,
                '\'' => f.write_str("&apos;")?,
                c if (c as u32) < 0x20 && c != '\t' && c != '\n' && c != '\r' => {}
                c => f.write_char(c)?,
            }
        }
        Ok(())
    }
}

fn anchor(a: Anchor) -> &'static str {
    match a {
        Anchor::Start => "start",
        Anchor::Middle => "middle",
        Anchor::End => "end",
    }
}

pub(crate) fn write_shape(out: &mut String, shape: &Shape, class: Option<&str>) -> fmt::Result {
    let class_attr = |out: &mut String| match class {
        Some(c) => write!(out, r#" class="{c}""#),
        None => Ok(()),
    };
    match shape {
        Shape::Rect { x, y, width, height, fill, stroke } => {
            write!(out, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}""#, Num(*x), Num(*y), Num(*width), Num(*height), Escaped(fill))?;
            if let Some(s) = stroke {
                write!(out, r#" stroke="{}" stroke-width="1""#, Escaped(s))?;
            }
            class_attr(out)?;
            out.push_str("/>\n");
        }
        Shape::Circle { cx, cy, r, fill, stroke } => {
            write!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="{}""#, Num(*cx), Num(*cy), Num(*r), Escaped(fill))?;
            if let Some(s) = stroke {
                write!(out, r#" stroke="{}" stroke-width="1""#, Escaped(s))?;
            }
            class_attr(out)?;
            out.push_str("/>\n");
        }
        Shape::Text { x, y, text, size, fill, anchor: a } => {
            write!(
                out,
                r#"<text x="{}" y="{}" font-size="{}" fill="{}" text-anchor="{}""#,
                Num(*x),
                Num(*y),
                Num(*size),
                Escaped(fill),
                anchor(*a)
            )?;
            class_attr(out)?;
            writeln!(out, ">{}</text>", Escaped(text))?;
        }
        Shape::Icon { symbol, x, y, size, fill } => {
            write!(
                out,
                r##"<use xlink:href="#{}" x="{}" y="{}" width="{}" height="{}" fill="{}""##,
                Escaped(symbol),
                Num(*x),
                Num(*y),
                Num(*size),
                Num(*size),
                Escaped(fill)
            )?;
            class_attr(out)?;
            out.push_str("/>\n");
        }
        Shape::Polygon { points, fill } => {
            out.push_str(r#"<polygon points=""#);
            for (i, (px, py)) in points.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{},{}", Num(*px), Num(*py))?;
            }
            write!(out, r#"" fill="{}""#, Escaped(fill))?;
            class_attr(out)?;
            out.push_str("/>\n");
        }
        Shape::Line { x1, y1, x2, y2, stroke, width } => {
            write!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}""#,
                Num(*x1),
                Num(*y1),
                Num(*x2),
                Num(*y2),
                Escaped(stroke),
                Num(*width)
            )?;
            class_attr(out)?;
            out.push_str("/>\n");
        }
    }
    Ok(())
}

pub(crate) fn write_legend(out: &mut String, legend: &Legend, label_size: f64, text: &str) -> fmt::Result {
    if legend.items.is_empty() {
        return Ok(());
    }
    writeln!(out, r#"<g class="legend">"#)?;
    let mut x = legend.x;
    let swatch = 8.0;
    let y = legend.y + (legend.height - swatch) / 2.0;
    for item in &legend.items {
        match &item.swatch {
            Swatch::Fill { color } => {
                let shape = Shape::Rect { x, y, width: swatch, height: swatch, fill: color.clone(), stroke: None };
                write_shape(out, &shape, None)?;
            }
            Swatch::Icon { symbol, color } => {
                let shape = Shape::Icon { symbol: symbol.clone(), x, y, size: swatch, fill: color.clone() };
                write_shape(out, &shape, None)?;
            }
        }
        let label = Shape::Text {
            x: x + swatch + 3.0,
            y: y + swatch,
            text: item.label.clone(),
            size: label_size,
            fill: text.into(),
            anchor: Anchor::Start,
        };
        write_shape(out, &label, None)?;
        x += swatch + 3.0 + item.label.chars().count() as f64 * label_size * 0.55 + 8.0;
    }
    writeln!(out, "</g>")
}
