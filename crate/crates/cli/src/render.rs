use std::fmt::Write;

use grautkit_core::format_map;
use grautkit_core::gens::{GenWord, Generator};
use grautkit_core::grading::NormalizedGrading;

const NAMES: [char; 3] = ['x', 'y', 'z'];

/// `a=3 b=1 c=1 (sign +1, scale 1, normalized x,y,z = raw z,x,y)`.
pub fn bookkeeping(g: &NormalizedGrading) -> String {
    let perm = g.permutation();
    let raw: Vec<String> = perm.iter().map(|&i| NAMES[i].to_string()).collect();
    format!(
        "{} (sign {:+}, scale {}, normalized x,y,z = raw {})",
        g,
        g.sign(),
        g.scale(),
        raw.join(",")
    )
}

/// One generator per line, outermost first.
pub fn word(word: &GenWord) -> String {
    let mut out = String::new();
    if word.factors.is_empty() {
        out.push_str("  (identity)\n");
    }
    for (i, f) in word.factors.iter().enumerate() {
        let _ = match f {
            Generator::Torus(t) => writeln!(out, "  {} T lambda={}", i + 1, t.lambda()),
            Generator::U(u) => writeln!(out, "  {} U {}", i + 1, format_map(&u.to_map())),
            Generator::S(s) => {
                let th = s.theta();
                writeln!(
                    out,
                    "  {} S tau=({}) theta=({}) s=({})",
                    i + 1,
                    format_map(&s.tau().to_map()),
                    format_map(&th.to_map()),
                    format_map(&s.correction().to_map()),
                )
                .and_then(|_| writeln!(out, "      plane: {}", format_map(s.plane_map())))
                .and_then(|_| writeln!(out, "      space: {}", format_map(s.lifted().map())))
            }
        };
    }
    out
}
