#pragma once

namespace gcife {

/// Exit codes: 0 success, 1 construction or solve failure, 2 usage error,
/// 3 inspect on an element that is not cut by the interface.
int cli_main(int argc, char** argv);

}  // namespace gcife
