//! Run the verification suites at small parameters and print the reports.
//!
//! `cargo run --release --example lemma_suite`

use cfk::{suite, Complex};

fn main() {
    let n = 2;
    let corpus = suite::corpus_generate(n, 1, &[2, 3]).unwrap();
    println!("corpus: {} complexes", corpus.items.len());
    for notice in &corpus.notices {
        println!("notice: {notice}");
    }

    let complexes: Vec<Complex> = corpus.items.iter().map(|i| i.complex.clone()).collect();
    println!("\n== ε-calculus ==");
    print!(
        "{}",
        suite::check_epsilon_calculus(&complexes).render_text()
    );

    println!("\n== sequence constraints ==");
    print!("{}", suite::check_section3(&corpus.items, n).render_text());

    println!("\n== classification-lemma instances ==");
    print!(
        "{}",
        suite::check_section4_corpus(n, 1, 4).unwrap().render_text()
    );

    println!("\n== order coherence ==");
    print!("{}", suite::check_order_coherence(&complexes).render_text());

    println!("\n== assembly ==");
    print!("{}", suite::check_main_theorem(&[2, 3], 4).render_text());
}
