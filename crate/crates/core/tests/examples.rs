// Every cargo example must keep running against the current API.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(concat!(stringify!($name), " example failed"));
        }
    };
}

example!(lattice_basics);
example!(blow_up);
example!(scst);
example!(difference_operators);
example!(polarization);
example!(witten_vs_cobordism);
example!(coefficient_table);
example!(identity_extraction);
