//! Text and SVG pictures of tilings.

use std::fmt::Write;

use crate::format::TilingDoc;

/// Side of one cell in SVG user units.
const CELL: usize = 24;

/// Index of the tile covering each cell; later tiles win on overlap.
fn owners(doc: &TilingDoc) -> Vec<Option<usize>> {
    let mut owner = vec![None; doc.rows * doc.cols];
    for (i, t) in doc.tiling.tiles.iter().enumerate() {
        for (x, y) in t.rect.cells() {
            if x < doc.rows && y < doc.cols {
                owner[x * doc.cols + y] = Some(i);
            }
        }
    }
    owner
}

/// A `(2R+1) × (2C+1)` character grid: cells hold their tile color (`.` when
/// uncovered), and `|`, `-`, `+` mark tile boundaries.
pub fn ascii(doc: &TilingDoc) -> String {
    let (rows, cols) = (doc.rows, doc.cols);
    let owner = owners(doc);
    let at = |x: isize, y: isize| -> Option<Option<usize>> {
        (x >= 0 && y >= 0 && (x as usize) < rows && (y as usize) < cols)
            .then(|| owner[x as usize * cols + y as usize])
    };
    let differ = |a: (isize, isize), b: (isize, isize)| -> bool {
        match (at(a.0, a.1), at(b.0, b.1)) {
            (Some(p), Some(q)) => p != q || p.is_none(),
            _ => true,
        }
    };
    // Border below row x-1 / above row x, at column y.
    let h_edge = |x: isize, y: isize| differ((x - 1, y), (x, y));
    let v_edge = |x: isize, y: isize| differ((x, y - 1), (x, y));
    let mut out = String::with_capacity((2 * rows + 1) * (2 * cols + 2));
    for gr in 0..=2 * rows {
        for gc in 0..=2 * cols {
            let (x, y) = ((gr / 2) as isize, (gc / 2) as isize);
            let ch = match (gr % 2, gc % 2) {
                (1, 1) => match owner[x as usize * cols + y as usize] {
                    Some(i) if doc.tiling.tiles[i].color => '1',
                    Some(_) => '0',
                    None => '.',
                },
                (0, 1) => {
                    if h_edge(x, y) {
                        '-'
                    } else {
                        ' '
                    }
                }
                (1, 0) => {
                    if v_edge(x, y) {
                        '|'
                    } else {
                        ' '
                    }
                }
                _ => {
                    let any = h_edge(x, y - 1) || h_edge(x, y) || v_edge(x - 1, y) || v_edge(x, y);
                    if any {
                        '+'
                    } else {
                        ' '
                    }
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

/// One `<rect>` per tile in tiling order; 1-tiles dark, 0-tiles light.
pub fn svg(doc: &TilingDoc) -> String {
    let (w, h) = (doc.cols * CELL, doc.rows * CELL);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##
    )
    .unwrap();
    for t in &doc.tiling.tiles {
        let r = t.rect;
        let fill = if t.color { "#303030" } else { "#e8e8e8" };
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#c03030" stroke-width="2" data-color="{}"/>"##,
            r.y_lo * CELL,
            r.x_lo * CELL,
            r.width() * CELL,
            r.height() * CELL,
            t.color as u8,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
