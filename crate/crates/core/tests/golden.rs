mod common;

use {
    anthem::{oracle::read_output, pipeline::Options},
    common::*,
};

fn cli_translate(name: &str) -> String {
    let path = program_path(name);
    let (code, stdout, stderr) = run_cli(&["translate", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stderr}");
    stdout
}

#[test]
fn corpus_matches_expected_listings() {
    for name in GOLDEN {
        assert_eq!(
            normalize(&cli_translate(name)),
            normalize(&expected_output(name)),
            "{name}"
        );
    }
}

#[test]
fn expected_listings_read_back_as_the_produced_formulas() {
    for name in GOLDEN {
        let output = translate_corpus(name, Options::default());
        let (formulas, annotations) = read_output(&expected_output(name)).unwrap();
        let produced = output.formulas();
        assert_eq!(formulas.len(), produced.len(), "{name}");
        for (read, produced) in formulas.iter().zip(&produced) {
            assert!(
                read.alpha_equivalent(produced),
                "{name}: {read} vs {produced}"
            );
        }
        assert_eq!(annotations, output.annotations, "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    for name in CORPUS {
        let first = cli_translate(name);
        for _ in 0..3 {
            assert_eq!(cli_translate(name), first, "{name}");
        }
    }
}

#[test]
fn every_switch_combination_reads_back() {
    for name in CORPUS {
        for bits in 0..8 {
            let options = Options {
                complete: bits & 1 == 0,
                simplify: bits & 2 == 0,
                detect_integers: bits & 4 == 0,
            };
            let output = translate_corpus(name, options);
            let (formulas, annotations) = read_output(&output.render()).unwrap();
            let produced = output.formulas();
            assert_eq!(formulas.len(), produced.len(), "{name} {bits}");
            for (read, produced) in formulas.iter().zip(&produced) {
                assert!(
                    read.alpha_equivalent(produced),
                    "{name} {bits}: {read} vs {produced}"
                );
                assert!(produced.satisfies_invariants(), "{name} {bits}: {produced}");
            }
            assert_eq!(annotations, output.annotations);
        }
    }
}
