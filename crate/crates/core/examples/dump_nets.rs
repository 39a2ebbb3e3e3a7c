//! Regenerates the shipped net files under `nets/` from the library's
//! example constructors. Run from the repository root:
//! `cargo run -p ocnkit --example dump_nets`.

use ocnkit::examples::{hd_threshold_net, mod7_fork_net, suit_fork_net, two_budget_net};
use ocnkit::net_model::{Ocn, Transition};
use ocnkit::textfmt::emit_ocn;

/// Deterministic counter language: prefixes never see more `b`s than `a`s.
fn counting_net() -> Ocn {
    Ocn::new(
        &["q0"],
        &["a", "b"],
        "q0",
        &["q0"],
        vec![
            Transition::new("q0", "a", 1, "q0"),
            Transition::new("q0", "b", -1, "q0"),
        ],
    )
}

/// One-state net accepting every word over {a, b}.
fn sigma_star_net() -> Ocn {
    Ocn::new(
        &["u"],
        &["a", "b"],
        "u",
        &["u"],
        vec![
            Transition::new("u", "a", 0, "u"),
            Transition::new("u", "b", 0, "u"),
        ],
    )
}

fn main() -> std::io::Result<()> {
    std::fs::create_dir_all("nets")?;
    for (name, net) in [
        ("threshold.ocn", hd_threshold_net()),
        ("mod7-fork.ocn", mod7_fork_net()),
        ("two-budget.ocn", two_budget_net()),
        ("suit-fork.ocn", suit_fork_net()),
        ("counting.ocn", counting_net()),
        ("sigma-star.ocn", sigma_star_net()),
    ] {
        let path = format!("nets/{name}");
        std::fs::write(&path, emit_ocn(&net))?;
        println!("wrote {path}");
    }
    Ok(())
}
