//! Text reports pinned against files in `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::Path;

use sullivan_cli::{emit, run, Command, Format, Options};

const CASES: &[(&str, Command, u32)] = &[
    ("squares_fibration", Command::Cohomology, 12),
    ("squares_fibration", Command::Presentation, 12),
    ("squares_fibration", Command::Duality, 30),
    ("squares_fibration", Command::HochschildPredict, 24),
    ("squares_fibration", Command::LoopHomology, 24),
    ("non_noetherian", Command::Classify, 24),
    ("non_noetherian", Command::StandardForm, 24),
    ("triple_product", Command::Unravel, 24),
    ("twisted_triple_product", Command::Unravel, 24),
    ("two_sphere", Command::Hilbert, 24),
];

#[test]
fn text_reports_match_golden_files() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for &(model, command, max_codegree) in CASES {
        let text = std::fs::read_to_string(root.join(format!("../../models/{model}.model"))).unwrap();
        let opts = Options { max_codegree, ..Options::default() };
        let report = run(command, &text, &opts).unwrap();
        let rendered = emit(&report, Format::Text);
        let path = root.join(format!("tests/golden/{model}.{command}.txt"));
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &rendered).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if expected != rendered {
            mismatches.push(format!("{}\n--- expected\n{expected}--- got\n{rendered}", path.display()));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}
