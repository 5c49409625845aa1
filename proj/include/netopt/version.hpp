#pragma once

#define NETOPT_VERSION_MAJOR 1
#define NETOPT_VERSION_MINOR 0
#define NETOPT_VERSION_PATCH 0
#define NETOPT_VERSION "1.0.0"
