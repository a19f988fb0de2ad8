//! Deterministic SVG: the defining pattern on the left, a depth-K
//! approximation on the right.  Coordinates are printed with fixed precision
//! so identical input gives identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use fracdim::attractor::{iterate_words, Generator};
use fracdim::model::{Carpet, Scalar, System};

use crate::{Exit, Failure, Input, Outcome};

/// Most rectangles a single image may hold.
pub const RENDER_CAP: u64 = 1_000_000;

const PANEL: f64 = 400.0;
const MARGIN: f64 = 20.0;
const TOP: f64 = 40.0;
const RIGHT: f64 = MARGIN + PANEL + 2.0 * MARGIN;

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Self {
        Svg { body: String::new() }
    }

    /// Unit-square rectangle `[x, x+w] × [y, y+h]` in the panel at `left`,
    /// with the y axis pointing up.
    fn rect(&mut self, left: f64, x: f64, y: f64, w: f64, h: f64, class: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect class="{class}" x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}"/>"#,
            left + x * PANEL,
            TOP + (1.0 - y - h) * PANEL,
            w * PANEL,
            h * PANEL
        );
    }

    fn vline(&mut self, left: f64, x: f64) {
        let px = left + x * PANEL;
        let _ = writeln!(
            self.body,
            r#"<line class="grid" x1="{px:.4}" y1="{TOP:.4}" x2="{px:.4}" y2="{:.4}"/>"#,
            TOP + PANEL
        );
    }

    fn hline(&mut self, left: f64, y: f64) {
        let py = TOP + (1.0 - y) * PANEL;
        let _ = writeln!(
            self.body,
            r#"<line class="grid" x1="{left:.4}" y1="{py:.4}" x2="{:.4}" y2="{py:.4}"/>"#,
            left + PANEL
        );
    }

    fn title(&mut self, left: f64, text: &str) {
        let _ = writeln!(self.body, r#"<text x="{left:.4}" y="{:.4}">{text}</text>"#, TOP - 12.0);
    }

    fn finish(self) -> String {
        let width = RIGHT + PANEL + MARGIN;
        let height = TOP + PANEL + MARGIN;
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
                "\n<style>",
                ".frame{{fill:none;stroke:#000;stroke-width:1}}",
                ".grid{{stroke:#999;stroke-width:0.5;stroke-dasharray:3 2}}",
                ".cell{{fill:#4a6fa5;stroke:#1d3557;stroke-width:0.5}}",
                ".cylinder{{fill:#1d3557;stroke:none}}",
                "text{{font:14px sans-serif}}",
                "</style>\n{body}</svg>\n"
            ),
            w = width,
            h = height,
            body = self.body
        )
    }
}

fn interior(offsets: &[Scalar]) -> impl Iterator<Item = f64> + '_ {
    offsets.iter().skip(1).map(Scalar::value)
}

/// The SVG document for `system` at `depth`.
pub fn render_svg(system: &System, depth: usize) -> Result<String, Failure> {
    let gen = Generator::from_system(system);
    let words = iterate_words(&gen, depth, RENDER_CAP)?;
    let mut svg = Svg::new();
    svg.title(MARGIN, "defining pattern");
    svg.title(RIGHT, &format!("depth {depth}"));
    match system {
        System::Carpet(carpet) => {
            match carpet {
                Carpet::Baranski(b) => {
                    interior(&b.column_offsets()).for_each(|x| svg.vline(MARGIN, x));
                    interior(&b.row_offsets()).for_each(|y| svg.hline(MARGIN, y));
                }
                Carpet::LalleyGatzouras(l) => interior(l.column_offsets()).for_each(|x| svg.vline(MARGIN, x)),
            }
            for m in gen.letters() {
                svg.rect(MARGIN, m.a.value(), m.b.value(), m.c.value(), m.d.value(), "cell");
            }
            for w in &words {
                let [x, y, c, d] = w.rect();
                svg.rect(RIGHT, x, y, c, d, "cylinder");
            }
        }
        System::SelfSimilar1D(_) => {
            // One band per depth, coarsest at the top.
            let bands = depth + 1;
            let band = 1.0 / bands as f64;
            let bar = 0.6 * band;
            for m in gen.letters() {
                svg.rect(MARGIN, m.a.value(), 0.5 - bar / 2.0, m.c.value(), bar, "cell");
            }
            for k in 0..=depth {
                let y = 1.0 - (k as f64 + 1.0) * band + (band - bar) / 2.0;
                for w in iterate_words(&gen, k, RENDER_CAP)? {
                    let [x, _, c, _] = w.rect();
                    svg.rect(RIGHT, x, y, c, bar, "cylinder");
                }
            }
        }
    }
    svg.rect(MARGIN, 0.0, 0.0, 1.0, 1.0, "frame");
    svg.rect(RIGHT, 0.0, 0.0, 1.0, 1.0, "frame");
    Ok(svg.finish())
}

pub(crate) fn run(input: &Input, depth: usize, output: &Path) -> Outcome {
    let svg = render_svg(&input.system, depth)?;
    std::fs::write(output, svg)
        .map_err(|e| Failure::input(anyhow::Error::new(e).context(format!("writing {}", output.display()))))?;
    Ok(Exit::Ok)
}
