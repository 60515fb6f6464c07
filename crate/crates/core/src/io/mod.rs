mod format;
mod generate;

pub use format::{
    from_file, parse_instance, serialize_instance, to_file, FormatError, InstanceFile,
    LoadedInstance,
};
pub use generate::{
    generate, random_coloring, random_connected_graph, random_instance, random_mcsc, GenerateError,
    Generated, GeneratorSpec,
};
