#pragma once

namespace treeshift {

// Every data-parallel kernel in the library has a serial reference
// implementation and an OpenMP one; both are selectable at runtime and must
// produce identical results. Tests pin Exec::serial as the oracle side.
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);

// Number of worker threads the parallel mode would use (1 without OpenMP).
int worker_count();

}  // namespace treeshift
