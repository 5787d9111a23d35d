//! Small named diagrams used in tests, docs and the CLI.

use crate::ogposet::OgPoset;

macro_rules! fixtures {
    ($($(#[$meta:meta])* $name:ident => $file:literal,)*) => {
        $(
            $(#[$meta])*
            pub fn $name() -> OgPoset {
                OgPoset::from_json(include_str!(concat!("../fixtures/", $file)))
                    .expect(concat!("fixture ", $file, " is well formed"))
            }
        )*

        /// Every fixture, by name.
        pub fn all() -> Vec<(&'static str, OgPoset)> {
            vec![$((stringify!($name), $name()),)*]
        }
    };
}

fixtures! {
    point => "point.json",
    /// One 1-cell `a -> b`.
    arrow => "arrow.json",
    /// Two composable arrows.
    path2 => "path2.json",
    /// Two parallel arrows and a 2-cell between them.
    globe2 => "globe2.json",
    /// A 2-cell from a two-step path to an arrow, whiskered by one more arrow.
    whiskered_globe => "whiskered_globe.json",
    /// Two 2-globes joined by a 1-cell.
    two_globes => "two_globes.json",
    /// Three 2-cells with a non-trivial 0-flow graph.
    flow_example => "flow_example.json",
    /// A 3-atom whose 0-flow graph has a cycle.
    non_dw_acyclic_atom => "non_dw_acyclic_atom.json",
    /// A 3-atom that is strongly dimension-wise acyclic but whose Hasse diagram has a cycle.
    non_acyclic_atom => "non_acyclic_atom.json",
    /// A 3-atom whose output boundary is the input boundary of `non_acyclic_atom`.
    pasting_partner_atom => "pasting_partner_atom.json",
    /// A dimension-wise acyclic 3-atom whose Gray square is not.
    gray_unstable_atom => "gray_unstable_atom.json",
    /// Two vertices, one arrow forward and two back.
    loop_graph => "loop_graph.json",
    /// `b -> a` and `b -> c`: not a pasting diagram.
    cospan => "cospan.json",
    /// Two triangles glued along a common edge.
    two_triangles => "two_triangles.json",
    /// `two_triangles` with its two side vertices identified.
    pinched_triangles => "pinched_triangles.json",
    /// Four 2-globes in a 2x2 arrangement.
    grid => "grid.json",
}
