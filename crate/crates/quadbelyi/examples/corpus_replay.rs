//! Replays the built-in catalog and prints one line per entry.
//!
//! Pass a substring to restrict the run to matching entry ids:
//!
//! ```text
//! cargo run --release --example corpus_replay -- painleve
//! ```

use quadbelyi::corpus::Catalog;

fn main() {
    let filter = std::env::args().nth(1);
    let catalog = Catalog::builtin();
    let started = std::time::Instant::now();
    let report = catalog.run(filter.as_deref());
    print!("{report}");
    eprintln!("elapsed: {:.1?}", started.elapsed());
    if !report.all_good() {
        std::process::exit(1);
    }
}
