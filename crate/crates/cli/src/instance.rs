use crate::args::InstanceArgs;
use crate::CliError;
use aqgi::cost::{GiInstance, SgiInstance};
use aqgi::graphs::{fixtures, parse_edge_list, Graph};
use std::path::{Path, PathBuf};

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_edge_list(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn label(paths: &[PathBuf]) -> String {
    paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(" vs ")
}

/// One graph (self-instance) or two (pair) from files or a fixture name.
pub fn load_graphs(args: &InstanceArgs) -> Result<(String, Graph, Option<Graph>), CliError> {
    match (&args.fixture, args.paths.as_slice()) {
        (Some(_), [_, ..]) => Err(CliError::Usage("give either --fixture or file paths, not both".into())),
        (Some(name), []) => {
            if fixtures::PAIR_NAMES.contains(&name.as_str()) {
                let (g, gp) = fixtures::pair(name)?;
                Ok((name.clone(), g, Some(gp)))
            } else {
                Ok((name.clone(), fixtures::single(name)?, None))
            }
        }
        (None, [g]) => Ok((label(&args.paths), read_graph(g)?, None)),
        (None, [g, gp]) => Ok((label(&args.paths), read_graph(g)?, Some(read_graph(gp)?))),
        (None, []) => Err(CliError::Usage("no instance: pass edge-list files or --fixture".into())),
        (None, _) => Err(CliError::Usage(format!("expected one or two graph files, got {}", args.paths.len()))),
    }
}

pub fn load_gi(args: &InstanceArgs) -> Result<(String, GiInstance), CliError> {
    let (name, g, gp) = load_graphs(args)?;
    let inst = match gp {
        Some(gp) => GiInstance::new(g, gp)?,
        None => GiInstance::automorphism(g)?,
    };
    Ok((name, inst))
}

pub fn load_sgi(paths: &[PathBuf], fixture: Option<&str>) -> Result<(String, SgiInstance), CliError> {
    let (name, g, h) = match (fixture, paths) {
        (Some(name), []) => {
            let (g, h) = fixtures::sgi_pair(name)?;
            (name.to_string(), g, h)
        }
        (None, [g, h]) => (label(paths), read_graph(g)?, read_graph(h)?),
        (Some(_), _) => return Err(CliError::Usage("give either --fixture or file paths, not both".into())),
        (None, _) => return Err(CliError::Usage(format!("expected files for G and H, got {} path(s)", paths.len()))),
    };
    Ok((name, SgiInstance::new(g, h)?))
}
