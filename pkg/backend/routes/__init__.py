# HTTP routers: queries and constraint systems
