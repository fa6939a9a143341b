use std::io::IsTerminal;

fn main() {
    let color = dtdgraph::cli::color_enabled(
        std::env::var("DTDGRAPH_COLOR").ok().as_deref(),
        std::io::stderr().is_terminal(),
    );
    let code = dtdgraph::cli::main_with_args(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        color,
    );
    std::process::exit(code);
}
