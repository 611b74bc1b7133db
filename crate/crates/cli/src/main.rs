use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use isotile::classify::{classified_size, classify_tiles, full_symmetry_group, generate_torus_tiling, tally, CountRow, ReportRecord};
use isotile::enumerate::{enumerate_size, enumerate_tiles, special_case_tiles, tiles_to_json, EnumerateOptions, MarkedTile};
use isotile::group::{admissible_sizes, build_group, fundamental_area, GroupKind, GroupParams};
use isotile::report::{emit_tables, render_tile_svg, render_tiling_svg, RenderStyle, TableFormat};

#[derive(Parser, Debug)]
#[command(name = "isotile", version, about = "Polyomino and polyiamond fundamental domains of isohedral tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List admissible tile sizes with the parameters realizing them.
    Sizes {
        #[arg(long)]
        group: GroupKind,
        #[arg(long)]
        max_n: u64,
    },
    /// Write the tiles for one size as JSON.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        /// Also write one SVG per tile.
        #[arg(long)]
        svg: bool,
    },
    /// Write the full symmetry group of every generated tiling as JSON.
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Write the counting table for every admissible n up to a bound.
    Table {
        #[arg(long)]
        group: GroupKind,
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Write SVG pictures of every tile and a patch of its tiling.
    Render {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        patch_radius: u32,
        #[arg(long, default_value_t = 24)]
        cell_px: u32,
        /// Draw mirror axes of the generating group.
        #[arg(long)]
        axes: bool,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    group: GroupKind,
    #[arg(long)]
    n: Option<u64>,
    /// Pin one parameter pair, e.g. `3,1` (or `3` for single-parameter groups).
    #[arg(long, value_parser = parse_params)]
    params: Option<GroupParams>,
}

#[derive(Args, Debug)]
struct Common {
    /// Output directory; standard output when absent.
    #[arg(long, env = "ISOTILE_OUT")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
}

impl Common {
    fn options(&self) -> EnumerateOptions {
        EnumerateOptions { workers: self.workers as usize, ..EnumerateOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_params(s: &str) -> std::result::Result<GroupParams, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<u32>().map_err(|e| format!("bad parameter {t:?}: {e}"));
    match parts.as_slice() {
        [x] => Ok(GroupParams::single(num(x)?)),
        [x, y] => Ok(GroupParams::new(num(x)?, num(y)?)),
        _ => Err(format!("expected x,y but got {s:?}")),
    }
}

fn emptiness_note(kind: GroupKind) -> Option<&'static str> {
    match kind {
        GroupKind::P4M => Some("p4m generates no isohedral tilings with n-omino fundamental domains; the result is empty"),
        GroupKind::P6M => Some("p6m generates no isohedral tilings with n-iamond fundamental domains; the result is empty"),
        GroupKind::P3M1 => Some(
            "p3m1 generates no isohedral tilings with bare n-iamond fundamental domains; only the triangle of side k (n = k^2) qualifies, when decorated with an asymmetric motif",
        ),
        _ => None,
    }
}

/// Tiles for the requested target, honoring a pinned parameter pair.
fn tiles_for(target: &Target, opts: &EnumerateOptions) -> Result<(u64, Vec<MarkedTile>)> {
    let kind = target.group;
    if let Some(note) = emptiness_note(kind) {
        eprintln!("note: {note}");
        let n = target.n.context("--n is required")?;
        return Ok((n, special_case_tiles(kind, n).unwrap_or_default()));
    }
    match target.params {
        Some(p) => {
            let p = p.normalized(kind);
            let area = fundamental_area(kind, p)?;
            if let Some(n) = target.n {
                if n != area {
                    bail!("parameters {} give tiles of size {area} for {kind}, not {n}", p.display_for(kind));
                }
            }
            let group = build_group(kind, p)?;
            Ok((area, enumerate_tiles(&group, opts)?))
        }
        None => {
            let n = target.n.context("one of --n or --params is required")?;
            Ok((n, enumerate_size(kind, n, opts)?))
        }
    }
}

fn write_output(out: Option<&Path>, name: &str, text: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn require_out<'a>(common: &'a Common, what: &str) -> Result<&'a Path> {
    common.out.as_deref().with_context(|| format!("{what} writes several files; pass --out DIR or set ISOTILE_OUT"))
}

fn table_rows(kind: GroupKind, max_n: u64, opts: &EnumerateOptions) -> Result<Vec<CountRow>> {
    let sizes: Vec<u64> = match kind {
        GroupKind::P4M | GroupKind::P6M => (1..=max_n).collect(),
        _ => admissible_sizes(kind, max_n).into_iter().map(|e| e.n).collect(),
    };
    sizes
        .into_iter()
        .map(|n| {
            let (tiles, reports) = classified_size(kind, n, opts)?;
            Ok(tally(kind, n, &tiles, &reports))
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sizes { group, max_n } => {
            if let Some(note) = emptiness_note(group).filter(|_| group != GroupKind::P3M1) {
                eprintln!("note: {note}");
            }
            for e in admissible_sizes(group, max_n) {
                for p in &e.params {
                    let flag = if e.marked_only { " marked-only" } else { "" };
                    println!("{} {}{flag}", e.n, p.display_for(group));
                }
            }
        }
        Command::Enumerate { target, common, svg } => {
            let (n, tiles) = tiles_for(&target, &common.options())?;
            let stem = format!("{}_n{n}", target.group);
            write_output(common.out.as_deref(), &format!("{stem}_tiles.json"), &(tiles_to_json(&tiles)? + "\n"))?;
            if svg {
                let dir = require_out(&common, "--svg")?;
                let style = RenderStyle::default();
                for (k, t) in tiles.iter().enumerate() {
                    write_output(Some(dir), &format!("{stem}_tile{:03}.svg", k + 1), &render_tile_svg(t, &style)?)?;
                }
            }
            eprintln!("{} tiles", tiles.len());
        }
        Command::Classify { target, common } => {
            let opts = common.options();
            let (n, tiles, reports) = match (target.params, target.n) {
                (None, Some(n)) => {
                    if let Some(note) = emptiness_note(target.group) {
                        eprintln!("note: {note}");
                    }
                    let (tiles, reports) = classified_size(target.group, n, &opts)?;
                    (n, tiles, reports)
                }
                _ => {
                    let (n, tiles) = tiles_for(&target, &opts)?;
                    let reports = classify_tiles(&tiles, opts.workers)?;
                    for check in isotile::classify::assert_theorems(target.group, &tiles, &reports) {
                        if !check.passed {
                            bail!("{} failed: {}", check.name, check.detail);
                        }
                    }
                    (n, tiles, reports)
                }
            };
            let records: Vec<ReportRecord> = tiles.iter().zip(&reports).map(|(t, r)| ReportRecord::new(t, r)).collect();
            let text = serde_json::to_string_pretty(&records)? + "\n";
            write_output(common.out.as_deref(), &format!("{}_n{n}_reports.json", target.group), &text)?;
            let row = tally(target.group, n, &tiles, &reports);
            eprintln!("N={} S={} N'={} S'={}", row.tiles, row.full, row.shapes, row.full_shapes);
        }
        Command::Table { group, max_n, format, common } => {
            if let Some(note) = emptiness_note(group) {
                eprintln!("note: {note}");
            }
            let rows = table_rows(group, max_n, &common.options())?;
            let (fmt, ext) = match format {
                Format::Csv => (TableFormat::Csv, "csv"),
                Format::Json => (TableFormat::Json, "json"),
            };
            write_output(common.out.as_deref(), &format!("{group}_table.{ext}"), &emit_tables(&rows, fmt)?)?;
        }
        Command::Render { target, common, patch_radius, cell_px, axes } => {
            let dir = require_out(&common, "render")?.to_path_buf();
            let (n, tiles) = tiles_for(&target, &common.options())?;
            let style = RenderStyle { cell_px, patch_radius, show_axes: axes, ..RenderStyle::default() };
            style.validate()?;
            let stem = format!("{}_n{n}", target.group);
            for (k, t) in tiles.iter().enumerate() {
                write_output(Some(&dir), &format!("{stem}_tile{:03}.svg", k + 1), &render_tile_svg(t, &style)?)?;
                if t.marked_only {
                    continue;
                }
                let group = build_group(t.group_kind, t.params)?;
                let tt = generate_torus_tiling(t, &group)?;
                let report = full_symmetry_group(&tt)?;
                write_output(Some(&dir), &format!("{stem}_tiling{:03}.svg", k + 1), &render_tiling_svg(&tt, Some(&report), &style)?)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
