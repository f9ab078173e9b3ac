#pragma once

#include "endokit/cli.hpp"
#include "endokit/endoscopy.hpp"
#include "endokit/galois_form.hpp"
#include "endokit/kottwitz.hpp"
#include "endokit/lattice.hpp"
#include "endokit/levi_transfer.hpp"
#include "endokit/rational.hpp"
#include "endokit/report.hpp"
#include "endokit/root_datum.hpp"
#include "endokit/spec_io.hpp"
