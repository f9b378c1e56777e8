//! Named inputs that ship with the tool. Each renders to the same text a
//! file would contain; the files under `fixtures/` are these renderings.

use ldtopo::fixtures as fx;
use ldtopo::io::{write_complex, write_exhaustion, write_glue_spec, write_map};

/// Stages materialized for the built-in exhaustions.
const EXHAUSTION_STAGES: usize = 17;

pub struct Builtin {
    pub name: &'static str,
    pub extension: &'static str,
    pub render: fn() -> String,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin { name: "point", extension: "cx", render: || write_complex(&fx::point()) },
    Builtin { name: "interval", extension: "cx", render: || write_complex(&fx::interval()) },
    Builtin { name: "circle", extension: "cx", render: || write_complex(&fx::circle()) },
    Builtin { name: "disk", extension: "cx", render: || write_complex(&fx::disk()) },
    Builtin { name: "sphere", extension: "cx", render: || write_complex(&fx::sphere()) },
    Builtin { name: "torus", extension: "cx", render: || write_complex(&fx::torus()) },
    Builtin { name: "projective-plane", extension: "cx", render: || write_complex(&fx::projective_plane()) },
    Builtin { name: "klein-bottle", extension: "cx", render: || write_complex(&fx::klein_bottle()) },
    Builtin { name: "wedge-of-circles", extension: "cx", render: || write_complex(&fx::wedge_of_circles()) },
    Builtin { name: "cylinder", extension: "cx", render: || write_complex(&fx::cylinder()) },
    Builtin { name: "hexagon", extension: "cx", render: || write_complex(&fx::hexagon()) },
    Builtin {
        name: "line",
        extension: "cx",
        render: || write_exhaustion(&fx::line_exhaustion(EXHAUSTION_STAGES)),
    },
    Builtin {
        name: "circle-chain",
        extension: "cx",
        render: || write_exhaustion(&fx::circle_chain_exhaustion(EXHAUSTION_STAGES)),
    },
    Builtin { name: "punctured-line", extension: "schema", render: || fx::punctured_line().to_string() },
    Builtin { name: "zigzag-pair", extension: "schema", render: || fx::zigzag_pair().to_string() },
    Builtin { name: "disk-to-point", extension: "map", render: || write_map(&fx::disk_to_point()) },
    Builtin { name: "hexagon-double-wrap", extension: "map", render: || write_map(&fx::hexagon_double_wrap()) },
    Builtin { name: "torus-identity", extension: "map", render: || write_map(&fx::identity(&fx::torus())) },
    Builtin {
        name: "two-circles",
        extension: "glue",
        render: || write_glue_spec(&fx::two_circles_along_edge()),
    },
];

pub fn lookup(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}
