// cubicalripser: persistent homology of 1D/2D/3D arrays.
//
//   cubicalripser [--maxdim N | --top_dim] [--location birth|death|none]
//                 [--min_cache_size N] [--output result.csv|.npy|.output] input
//   cubicalripser convert <in> <out>          NPY <-> DIPHA
//   cubicalripser stack <result> -i <image> -o <out.npy> [-t life|hist]
//   cubicalripser oracle [--maxdim N] <input>  brute-force reference

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cripser/cohomology.hpp"
#include "cripser/io.hpp"
#include "cripser/oracle.hpp"
#include "cripser/postprocess.hpp"
#include "cripser/top_dim.hpp"

namespace fs = std::filesystem;
using namespace cripser;

namespace {

std::string extension(const fs::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

void write_diagram(const PersistenceDiagram& diag, const std::string& output, LocationMode loc) {
  if (output.empty()) {
    write_csv(std::cout, diag, loc);
    return;
  }
  const std::string ext = extension(output);
  if (ext == ".npy") write_npy(output, diagram_to_array(diag, loc));
  else if (ext == ".output" || ext == ".diagram") write_dipha_diagram(output, diag);
  else write_csv(fs::path(output), diag, loc);
}

void report(const PersistenceDiagram& diag, double seconds) {
  const auto counts = diag.counts();
  std::cerr << "algorithm: " << to_string(diag.algorithm) << "\n";
  for (int d = 0; d <= diag.maxdim && d < 3; ++d)
    std::cerr << "dim " << d << ": " << counts[static_cast<std::size_t>(d)] << " pairs\n";
  std::cerr << "computation took " << seconds << " s\n";
}

PersistenceDiagram read_diagram(const fs::path& path) {
  if (auto type = dipha_file_type(path)) {
    if (*type != kDiphaPersistenceDiagram) throw FormatError(path.string() + ": not a DIPHA diagram");
    return read_dipha_diagram(path);
  }
  if (extension(path) == ".csv") return array_to_diagram(read_csv_array(path));
  return array_to_diagram(read_npy_array(path));
}

// The three conversions of dipha2npy plus diagram arrays back to DIPHA.
void convert(const fs::path& in, const fs::path& out) {
  const std::string out_ext = extension(out);
  if (auto type = dipha_file_type(in)) {
    if (out_ext != ".npy") throw FormatError("DIPHA input converts to .npy only");
    if (*type == kDiphaImageData) write_npy(out, image_to_array(read_dipha_image(in)));
    else if (*type == kDiphaPersistenceDiagram)
      write_npy(out, diagram_to_array(read_dipha_diagram(in), LocationMode::None));
    else throw FormatError(in.string() + ": unsupported DIPHA file type " + std::to_string(*type));
    return;
  }
  const Tensor arr = read_npy_array(in);
  if (out_ext == ".output" || out_ext == ".diagram") {
    write_dipha_diagram(out, array_to_diagram(arr));
  } else if (out_ext == ".complex") {
    write_dipha_image(out, image_from_array(arr));
  } else {
    throw FormatError("cannot infer conversion target from '" + out.string() + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology of 1D/2D/3D images (cubical complexes, Z/2 coefficients)"};
  app.set_version_flag("--version", "cubicalripser 1.0.0");

  std::string input, output, location = "birth";
  int maxdim = 1;
  std::size_t min_cache_size = 0;
  bool top_dim = false;
  bool no_apparent = false;
  double threshold = kDefaultInfinityThreshold;
  auto* maxdim_opt = app.add_option("--maxdim", maxdim, "Compute up to this dimension (0-2)")
                         ->check(CLI::Range(0, 2));
  app.add_flag("--top_dim", top_dim, "Compute only the top dimension (Alexander duality)")
      ->excludes(maxdim_opt);
  app.add_option("--location", location, "Location column: birth, death or none")
      ->check(CLI::IsMember({"birth", "death", "none"}));
  app.add_option("--min_cache_size", min_cache_size,
                 "Cache reduced columns with at least this many entries");
  app.add_option("--threshold", threshold, "Values >= this lie outside the domain");
  app.add_flag("--no_apparent_pairs", no_apparent, "Disable the apparent-pair shortcut");
  app.add_option("--output,-o", output, "Output file (.csv, .npy or DIPHA .output); stdout if omitted");
  app.add_option("input", input, "Input image (.npy or DIPHA .complex)");

  auto* conv = app.add_subcommand("convert", "Convert images/diagrams between NPY and DIPHA");
  std::string conv_in, conv_out;
  conv->add_option("input", conv_in, "Source file")->required();
  conv->add_option("output", conv_out, "Destination; format chosen by extension")->required();

  auto* stack = app.add_subcommand("stack", "Lifetime-enhanced or persistent histogram image");
  std::string stack_result, stack_image, stack_out, stack_type = "life";
  std::vector<int> stack_dims{0, 1, 2};
  std::size_t birth_bins = 5, life_bins = 5;
  std::vector<double> birth_range, life_range;
  double clip = 0;
  stack->add_option("result", stack_result, "Diagram (.npy, .csv or DIPHA)")->required();
  stack->add_option("-i,--image", stack_image, "Original image")->required();
  stack->add_option("-o,--output", stack_out, "Output .npy")->required();
  stack->add_option("-t,--type", stack_type, "life or hist")->check(CLI::IsMember({"life", "hist"}));
  stack->add_option("-d,--dims", stack_dims, "Homology dimensions to stack")->delimiter(',');
  stack->add_option("--birth_bins", birth_bins, "Histogram bins along birth");
  stack->add_option("--life_bins", life_bins, "Histogram bins along lifetime");
  stack->add_option("--birth_range", birth_range, "Histogram birth range (default: fitted)")->expected(2);
  stack->add_option("--life_range", life_range, "Histogram lifetime range (default: fitted)")->expected(2);
  auto* clip_opt = stack->add_option("--clip_essential", clip, "Treat essential classes as dying here");

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference computation (small inputs)");
  std::string oracle_in;
  int oracle_maxdim = 1;
  oracle->add_option("input", oracle_in)->required();
  oracle->add_option("--maxdim", oracle_maxdim)->check(CLI::Range(0, 2));

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (conv->parsed()) {
      convert(conv_in, conv_out);
      return 0;
    }

    if (stack->parsed()) {
      const Image img = read_image(stack_image, threshold);
      const PersistenceDiagram diag = read_diagram(stack_result);
      Tensor out;
      if (stack_type == "life") {
        const EssentialPolicy policy =
            clip_opt->count() ? EssentialPolicy::clip(clip) : EssentialPolicy::drop();
        out = stack_lifetime_enhanced(img, diag, stack_dims, policy);
      } else {
        const auto spatial = array_shape(img);
        for (int d : stack_dims) {
          HistogramSpec spec = fit_histogram(diag, d, birth_bins, life_bins);
          if (birth_range.size() == 2) std::tie(spec.birth_min, spec.birth_max) = std::pair(birth_range[0], birth_range[1]);
          if (life_range.size() == 2) std::tie(spec.life_min, spec.life_max) = std::pair(life_range[0], life_range[1]);
          const Tensor h = persistent_histogram_image(diag, img.shape(), spatial, d, spec);
          if (out.shape.empty()) out.shape = h.shape;
          else out.shape[0] += h.shape[0];
          out.data.insert(out.data.end(), h.data.begin(), h.data.end());
        }
      }
      write_npy(stack_out, out);
      return 0;
    }

    if (oracle->parsed()) {
      const Image img = read_image(oracle_in, threshold);
      write_csv(std::cout, oracle_ph(img, oracle_maxdim), LocationMode::None);
      return 0;
    }

    if (input.empty()) {
      std::cerr << "error: an input file is required\n" << app.help();
      return 1;
    }
    const Image img = read_image(input, threshold);
    const auto start = std::chrono::steady_clock::now();
    PersistenceDiagram diag;
    if (top_dim) {
      diag = compute_top_dim(img);
    } else {
      diag = compute_ph(img, maxdim, ReductionOptions{min_cache_size, !no_apparent});
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    write_diagram(diag, output, parse_location(location));
    report(diag, elapsed.count());
    return 0;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range: bad input or options
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
