//! Every example in `examples/` runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(tree_walk);
example!(quotient_graph);
example!(harmonic_cochains);
example!(hecke_operators);
example!(ihara_lemma);
example!(level_raising);
example!(tower);
example!(explore_tree);
